// Final gate: one pass/fail line per top-level acceptance criterion.

#include <iostream>

#include "k3g2/acceptance.hpp"

int main() {
    k3g2::AcceptanceSummary summary = k3g2::run_acceptance();
    std::cout << k3g2::acceptance_lines(summary);
    return summary.all_passed ? 0 : 1;
}
