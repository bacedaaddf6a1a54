#pragma once

#include <functional>
#include <string>
#include <vector>

namespace cmcvol {
namespace acceptance {

struct CriterionResult {
    int id{0};
    std::string name;
    bool pass{false};
    double worst_error{0.0};  // largest error measured, in the criterion's units
    double limit{0.0};        // the tolerance it is held to
    double runtime_ms{0.0};
    std::string detail;
};

/// Runs the full acceptance suite; one result per criterion, in order.
std::vector<CriterionResult> run_all();

/// Runs a single criterion (1-based id).
CriterionResult run_criterion(int id);

}  // namespace acceptance
}  // namespace cmcvol
