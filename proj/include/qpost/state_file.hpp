#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qpost/linalg.hpp"

namespace qpost {

/// A state vector as read from disk. The text format is line oriented:
///
///   # comments and blank lines are ignored
///   label: optional free text
///   dim: 3
///   0.5773502691896258  0
///   0.5773502691896258  0
///   0.5773502691896258  0
///
/// One "re im" pair per amplitude, exactly dim of them, after the dim line.
struct StateFile {
  int dim = 0;
  std::vector<cdouble> amplitudes;
  std::string label;

  /// |norm - 1| of the raw amplitudes.
  double norm_deviation() const;

  /// Renormalizes into a Ket. Deviations up to 1e-3 are corrected
  /// (call sites should warn above 1e-6); larger ones throw ParseError.
  Ket to_ket() const;
};

StateFile parse_state_file(const std::string& text);
StateFile load_state_file(const std::filesystem::path& path);
std::string format_state_file(const StateFile& state);

}  // namespace qpost
