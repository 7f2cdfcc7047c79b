#include "sylv/solve_report.hpp"

namespace sylv {

const char* to_string(Termination t) noexcept {
  switch (t) {
    case Termination::Converged: return "converged";
    case Termination::MaxIterations: return "max-iterations";
    case Termination::Diverged: return "diverged";
    case Termination::Breakdown: return "breakdown";
    case Termination::Stagnation: return "stagnation";
  }
  return "unknown";
}

}  // namespace sylv
