#pragma once

// Text formats for algebras, groups, bundles and cocycles. All parsers read
// exact rationals and report ParseError with the 1-based line number.
//
//   algebra:  dim <n> / basis ... / unit ... / counit ... / mul <i> <j> -> <k>:<c>,...
//   group:    group <m> / m rows of the 0-based table / labels ...
//   bundle:   bundle over <groupfile> / fiber <g> dim <d> /
//             fusion|fission <g> <h> : ... / transport <k> <g> : ... / unit : ... / counit : ...
//   cocycle:  cocycle over <groupfile> / theta <g> <h> = <c> / tau <k> <g> = <c>
//
// Group paths inside bundle and cocycle files are relative to that file.
// Bundle blocks are tensors in row-major order, input legs first: fusion
// [d_g, d_h, d_gh], fission [d_gh, d_g, d_h], transport [d_g, d_kgk^-1].

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>

#include "tft/crossed_bundle.hpp"
#include "tft/frobenius_algebra.hpp"
#include "tft/group.hpp"
#include "tft/rank_one.hpp"

namespace tft {

using GroupLoader = std::function<FiniteGroup(const std::string&)>;

std::string read_file(const std::filesystem::path& path);

FrobeniusAlgebra<Rational> parse_algebra(std::string_view text);
std::string format_algebra(const FrobeniusAlgebra<Rational>& a);
FrobeniusAlgebra<Rational> load_algebra(const std::filesystem::path& path);

FiniteGroup parse_group(std::string_view text);
std::string format_group(const FiniteGroup& G);
FiniteGroup load_group(const std::filesystem::path& path);

CrossedBundle<Rational> parse_bundle(std::string_view text, const GroupLoader& groups);
std::string format_bundle(const CrossedBundle<Rational>& b, const std::string& group_path);
CrossedBundle<Rational> load_bundle(const std::filesystem::path& path);

/// When the file has no tau lines the transport is the transgression of
/// theta (from_cocycle); once any tau line appears, omitted values are 1.
ScalarBundle<Rational> parse_cocycle(std::string_view text, const GroupLoader& groups);
ScalarBundle<Rational> load_cocycle(const std::filesystem::path& path);

}  // namespace tft
