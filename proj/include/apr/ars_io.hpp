#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "apr/ars.hpp"

namespace apr {

// Line-based ARS text format:
//   # comment
//   states a b c d
//   trans a b
inline Ars parse_ars(std::istream& in) {
  std::vector<std::string> labels;
  struct PendingTrans {
    std::string src, dst;
    std::size_t line;
  };
  std::vector<PendingTrans> edges;
  bool have_states = false;
  std::string line;
  std::size_t lineno = 0;

  auto fail = [&lineno](const std::string& msg) {
    throw InputError("line " + std::to_string(lineno) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string keyword;
    if (!(words >> keyword)) continue;
    std::vector<std::string> args;
    for (std::string w; words >> w;) {
      if (!is_valid_label(w)) fail("invalid label '" + w + "'");
      args.push_back(std::move(w));
    }
    if (keyword == "states") {
      if (have_states) fail("duplicate 'states' line");
      have_states = true;
      labels = std::move(args);
    } else if (keyword == "trans") {
      if (!have_states) fail("'trans' before 'states'");
      if (args.size() != 2) fail("'trans' expects exactly two labels");
      edges.push_back({std::move(args[0]), std::move(args[1]), lineno});
    } else {
      fail("unknown directive '" + keyword + "'");
    }
  }
  if (!have_states) throw InputError("missing 'states' line");

  std::unordered_map<std::string, ObjectId> index;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!index.emplace(labels[i], static_cast<ObjectId>(i)).second) {
      throw InputError("duplicate object label '" + labels[i] + "'");
    }
  }
  std::vector<Transition> transitions;
  transitions.reserve(edges.size());
  for (const auto& [src, dst, line_of] : edges) {
    auto s = index.find(src);
    auto d = index.find(dst);
    for (const auto& [it, name] : {std::pair{s, src}, std::pair{d, dst}}) {
      if (it == index.end()) {
        throw InputError("line " + std::to_string(line_of) + ": unknown label '" + name + "' in trans");
      }
    }
    transitions.push_back({s->second, d->second});
  }
  return Ars(std::move(labels), transitions);
}

inline Ars parse_ars(const std::string& text) {
  std::istringstream in(text);
  return parse_ars(in);
}

inline void write_ars(std::ostream& out, const Ars& ars) {
  out << "states";
  for (const auto& l : ars.labels()) out << ' ' << l;
  out << '\n';
  for (const Transition& t : ars.transitions()) {
    out << "trans " << ars.label(t.from) << ' ' << ars.label(t.to) << '\n';
  }
}

}  // namespace apr
