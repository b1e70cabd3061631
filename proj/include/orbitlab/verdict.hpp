#pragma once

namespace orbitlab {

/// Outcome of one verifier run. `hypotheses_unmet` means the inputs did not
/// satisfy the statement's preconditions (nothing was tested);
/// `inconclusive` means float margins made membership undecidable at the
/// tested threshold, so no verdict is claimed either way.
enum class Verdict { pass, fail, hypotheses_unmet, inconclusive };

constexpr const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::hypotheses_unmet: return "hypotheses-unmet";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

}  // namespace orbitlab
