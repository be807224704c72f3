#pragma once

#include <string>

#include "apr/ars_io.hpp"
#include "apr/rules.hpp"

namespace apr::testing {

inline std::string data_path(const std::string& name) { return std::string(APR_DATA_DIR) + "/" + name; }

// a -> b, a -> d, b -> a, b -> c; c and d are normal forms.
inline Ars a1() {
  return parse_ars(std::string("states a b c d\ntrans a b\ntrans a d\ntrans b a\ntrans b c\n"));
}

inline AprPredicate pred(const Ars& ars, std::initializer_list<std::string> p, std::initializer_list<std::string> q) {
  return AprPredicate(ars.set_of(p), ars.set_of(q));
}

}  // namespace apr::testing
