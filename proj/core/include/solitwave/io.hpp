#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "solitwave/collocation.hpp"
#include "solitwave/functionals.hpp"
#include "solitwave/petviashvili.hpp"
#include "solitwave/profile.hpp"

namespace solitwave::io {

/// 17 significant digits, '.' separator, independent of the global locale.
std::string format_double(double x);
/// Throws ValidationError on malformed input.
double parse_double(std::string_view s);

/// Header "x,psi,v".
void write_profile_csv(const std::filesystem::path& path, const WaveProfile& w);
/// Header "x,u,eta" (u is stored in v, eta in psi).
void write_snapshot_csv(const std::filesystem::path& path, const WaveProfile& state);

/// Reads either CSV layout. Without an expected grid the length is inferred
/// as N * (x_1 - x_0); with one, the x column must match it.
WaveProfile read_profile_csv(const std::filesystem::path& path, const std::optional<Grid>& expected = std::nullopt);

/// Flat object with exactly i1, i2, i_omega, k, n, p_omega, j_omega,
/// residual_inf, residual_l2.
std::string functional_report_json(const FunctionalReport& r);
void write_functional_report(const std::filesystem::path& path, const FunctionalReport& r);

/// {l, psi_coeffs, v_coeffs}
std::string expansion_json(const CosineExpansion& e);
void write_expansion(const std::filesystem::path& path, const CosineExpansion& e);
CosineExpansion read_expansion(const std::filesystem::path& path);

void write_petviashvili_history(const std::filesystem::path& path, const SolveReport& r);
void write_newton_history(const std::filesystem::path& path, const NewtonReport& r);

/// Writes text with LF line endings, creating parent directories.
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace solitwave::io
