#pragma once

#include <string>
#include <vector>

#include "priorisk/oracle.hpp"
#include "priorisk/packing.hpp"

namespace priorisk {

// Built-in fully-enumerable problems used to sandwich every bound between
// zero and the exact enumerated optimum.
struct ChainInstance {
    std::string name;
    FiniteInstance instance;
    // For estimation-shaped instances the matrix rows/columns are grid points
    // and entries are pseudometric distances, so packing bounds apply too.
    bool estimation = false;
    LossSpec::Rho metric = LossSpec::Rho::AbsDiff;
    bool has_separation = false;
    HammingSeparation separation;
};

std::vector<ChainInstance> built_in_chain_instances();

struct ChainReport {
    std::string name;
    double enumerated = 0.0;
    double bayes_weighted = 0.0;
    double gfano = 0.0;
    double lecam = 0.0;       // -1 when not applicable
    double fano_mixture = 0.0;
    double fano_pairwise = 0.0;
    double assouad = 0.0;
    bool ok = false;
    std::string detail;
};

// Evaluates every applicable bound and checks, within tolerance, that each
// stays below the enumerated optimum and that the soft bound stays below the
// exact weighted-average optimum.
ChainReport run_inequality_chain(const ChainInstance& ci, double tol = 1e-9);

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Condensed property suite behind the `selftest` command.
std::vector<CheckLine> run_selftest();

}  // namespace priorisk
