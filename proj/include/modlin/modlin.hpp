#pragma once

// Umbrella header: exact linear algebra over Z/kZ — feasibility, explicit
// solutions, and nullspace generating sets for linear congruence systems,
// plus the brute-force references used to validate the fast paths.

#include "base.hpp"           // modular scalar arithmetic, shared guards
#include "residue.hpp"        // Modulus, Residue, inverses, CRT
#include "matrix.hpp"         // MatModK, VecModK, determinant, inverse
#include "generating_set.hpp" // GeneratingSet
#include "fp_linalg.hpp"      // row reduction and nullspace bases over F_p
#include "lifting.hpp"        // nullspace lifting p^t -> p^(t+1)
#include "crt_combine.hpp"    // per-factor nullspace recombination
#include "solver.hpp"         // feasible / solve / nullspace over Z/kZ
#include "oracle.hpp"         // brute-force enumeration references
#include "branch_counter.hpp" // layered-program path counting
#include "instance_io.hpp"    // text instance parsing and serialization
