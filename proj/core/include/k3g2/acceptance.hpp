#pragma once

#include <string>
#include <vector>

namespace k3g2 {

// One top-level acceptance criterion with a short human-readable outcome.
struct CriterionResult {
    int index = 0;
    std::string title;
    bool passed = false;
    std::string detail;
};

struct AcceptanceSummary {
    std::vector<CriterionResult> criteria;
    bool all_passed = false;
};

// Runs the whole acceptance battery.  Exceptions inside a criterion are
// captured as failures; the function itself does not throw.
AcceptanceSummary run_acceptance();

// One pass/fail line per criterion.
std::string acceptance_lines(const AcceptanceSummary& summary);

}  // namespace k3g2
