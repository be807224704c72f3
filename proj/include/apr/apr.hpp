#pragma once

// Umbrella header.
#include "apr/ars.hpp"
#include "apr/ars_io.hpp"
#include "apr/expand.hpp"
#include "apr/model.hpp"
#include "apr/oracle.hpp"
#include "apr/pre_proof.hpp"
#include "apr/proof_graph.hpp"
#include "apr/prover.hpp"
#include "apr/reductions.hpp"
#include "apr/report.hpp"
#include "apr/rules.hpp"
#include "apr/state_set.hpp"
#include "apr/witness.hpp"
