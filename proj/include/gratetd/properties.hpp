#ifndef GRATETD_PROPERTIES_HPP
#define GRATETD_PROPERTIES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace gratetd {

/// Outcome of one randomized property check. The lines are deterministic for
/// a fixed seed (the `check` subcommand's byte-identical output contract).
struct PropertyResult {
    std::string name;
    bool pass = true;
    std::vector<std::string> lines;
};

/// Branch safety of the mode symbols plus the closed-form real/imaginary-part
/// identities, and nonpositivity of the DtN boundary quadratic form.
PropertyResult prop_branch_negativity(std::uint64_t seed, int symbol_samples,
                                      int trace_samples);

/// Trace inequality and DtN continuity with their explicit constants on
/// random discrete fields and traces at random admissible frequencies.
PropertyResult prop_explicit_constants(std::uint64_t seed, int fields_per_lemma,
                                       int frequencies);

/// Discrete coercivity of the sesquilinear form with the explicit constant,
/// over random fields on layered and lamellar media.
PropertyResult prop_coercivity(std::uint64_t seed, int fields);

/// FFT DtN application against the dense summation reference.
PropertyResult prop_dtn_equivalence(std::uint64_t seed, int max_nx);

/// Weighted-norm plumbing: the Fourier-route volume norm against its nodal
/// evaluation, and the per-mode duality inequality.
PropertyResult prop_norm_identities(std::uint64_t seed, int samples);

std::vector<PropertyResult> run_property_suite(std::uint64_t seed);

} // namespace gratetd

#endif
