#pragma once

#include "gradcon/algebra.hpp"
#include "gradcon/orbit.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace gradcon {

using Json = nlohmann::json;

inline constexpr const char *kVersion = "1.0.0";

/// "p/q", "p" or a JSON integer; throws ParseError otherwise.
Rational parse_rational(std::string_view text);
Rational rational_from_json(const Json &j);

Json element_to_json(const AbelianGroup &group, std::size_t g);
std::size_t element_from_json(const AbelianGroup &group, const Json &j);

/// Sorted list of pairs [[g...],[h...]].
Json support_to_json(const Support &s);
/// Accepts "full", "empty", a list of [g, h] pairs (each element a residue
/// list or element text) or of "g|h" keys.
Support support_from_json(const GroupPtr &group, const Json &j);

/// Object "g|h" -> "p/q", keys in pair order.
Json contraction_to_json(const Contraction &c);
Contraction contraction_from_json(const GroupPtr &group, const Json &j);

/// {"group", "degrees", "brackets": [{"i","j","terms":[{"k","c"}]}]}.
Json algebra_to_json(const GradedAlgebra &a);
/// Throws ParseError on malformed input and ValidationError if the algebra
/// fails degree, antisymmetry or Jacobi checks. If group is given the
/// file's group must match it.
GradedAlgebra algebra_from_json(const Json &j, const GroupPtr &group = nullptr);

Json structure_to_json(const AbelianGroupStructure &s);
Json descriptor_to_json(const H2Descriptor &d);
Json binomial_to_json(const Binomial &b, const AbelianGroup &group);
Json integers_to_json(const std::vector<Integer> &v);

Json read_json_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, const std::string &text);

/// Keyword, inline JSON (starting with '[' or '{' or '"') or a file path.
Json json_argument(std::string_view arg);

/// Standard output wrapper shared by every command.
Json envelope(std::string_view command, Json group, Json parameters, Json result);

} // namespace gradcon
