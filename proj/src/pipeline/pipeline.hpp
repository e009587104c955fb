#pragma once
#include <cstdint>
#include <optional>
#include <string>

#include "core/rational.hpp"
#include "polysys/system.hpp"

namespace grc {

// Outcome of one counting route.  count is empty when a hypothesis of the
// route's theorem could not be certified; failing_check then names the first
// check that did not go through.  certificate is a JSON object collecting
// whatever was established either way.
struct CountResult {
  std::string pipeline;  // vertical | horizontal | bkk
  std::optional<Int> count;
  std::string failing_check;
  std::string note;
  std::string certificate;
};

// Rewrite the system with one unknown per support monomial, certify the
// torus action, generic independence and full-torus validity, then intersect
// the Bergman fan of the kernel matroid with the graph hypersurfaces.  Rows
// whose coefficients carry constants are split off as plain hypersurface
// factors; they must use their own parameters and meet the graphs
// transversally.
CountResult count_vertical(const System& sys, uint64_t seed);

// Rewrite per occurrence of a support polynomial, merging equal supports
// (within a declared factor block), and intersect the rewritten linear rows
// with the graph of the non-monomial supports.  Monomial columns are
// substituted back before any geometry.  The graph complex comes from a
// finite toric cover when every support is a two-term polynomial with
// exponents congruent mod 2 landing on unit vectors, and otherwise from the
// rewritten generating set when its hypersurfaces meet transversally.
CountResult count_horizontal(const System& sys, uint64_t seed);

// Mixed-volume count for a universal family: every coefficient its own
// parameter.  Needs one weight assignment with a bounded prevariety; taken
// from `weights` when given, otherwise searched over a few seeded draws.
// The two mixed-volume engines must agree.
CountResult count_bkk(const System& sys, uint64_t seed, const Specialization* weights);

// Command cores behind the CLI.  ok mirrors the exit status: the count was
// certified, the engines agreed, the oracle terminated.
struct RunReport {
  bool ok = false;
  std::string json;
};

RunReport run_count(const System& sys, const std::string& mode, uint64_t seed,
                    const Specialization* spec, bool verify);
RunReport run_mv(const System& sys, uint64_t seed);
RunReport run_oracle(const System& sys, uint64_t seed, const Specialization* spec,
                     const std::optional<Rat>& t_value);
RunReport run_prevariety(const System& sys, const Specialization& spec, uint64_t seed);
RunReport run_matroid(const System& sys, uint64_t seed);
RunReport run_modify(const System& sys, const std::string& mode);

}  // namespace grc
