#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ksep/state.hpp"

namespace ksep {

/// Result of reading a state file: either a fixed operator or a white-noise
/// family whose mixing parameter is supplied at evaluation time.
using StateSource = std::variant<DensityMatrix, NoiseFamily>;

/// Parses the JSON state-file formats:
///   {"kind":"dicke_noise","n":N,"m":M}
///   {"kind":"pure_noise","n":N,"amplitudes":[["bits",re,im],...]}
///   {"kind":"density","n":N,"entries":[["rowbits","colbits",re,im],...]}
/// Throws Error with kind syntax / non_hermitian / negative_diagonal / trace /
/// norm as appropriate.
StateSource parse_state_file(std::string_view text);

/// Theorem-3 basis file: {"n":N,"states":["bits",...]}.
std::vector<BasisState> parse_basis_file(std::string_view text);

/// Explicit-form state file text for rho, full precision.
std::string density_to_state_json(const DensityMatrix& rho);

std::string read_text_file(const std::string& path);

}  // namespace ksep
