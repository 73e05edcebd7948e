#include "gradcon/io.hpp"

#include "gradcon/error.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace gradcon {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto is_digits = [](std::string_view t) {
    return !t.empty() && std::all_of(t.begin(), t.end(), [](unsigned char ch) { return std::isdigit(ch); });
  };
  std::string_view body = s;
  if (!body.empty() && (body.front() == '-' || body.front() == '+'))
    body.remove_prefix(1);
  const auto slash = body.find('/');
  const bool ok = slash == std::string_view::npos
                      ? is_digits(body)
                      : is_digits(body.substr(0, slash)) && is_digits(body.substr(slash + 1));
  if (!ok)
    throw ParseError("malformed rational '" + s + "' (expected p or p/q)");
  if (s.front() == '+')
    s.erase(0, 1);
  Rational r;
  if (slash != std::string_view::npos) {
    mpz_class num(std::string(s.substr(0, s.find('/')))), den(s.substr(s.find('/') + 1));
    if (sgn(den) == 0)
      throw ParseError("zero denominator in '" + std::string(text) + "'");
    r = Rational(num, den);
  } else {
    r = Rational(mpz_class(s));
  }
  r.canonicalize();
  return r;
}

Rational rational_from_json(const Json &j) {
  if (j.is_string())
    return parse_rational(j.get<std::string>());
  if (j.is_number_integer())
    return Rational(mpz_class(j.dump()));
  throw ParseError("expected a rational string, got " + j.dump());
}

Json element_to_json(const AbelianGroup &group, std::size_t g) {
  Json out = Json::array();
  for (long r : group.element(g).residues)
    out.push_back(r);
  return out;
}

std::size_t element_from_json(const AbelianGroup &group, const Json &j) {
  if (j.is_string())
    return group.parse_element(j.get<std::string>());
  if (j.is_number_integer() && group.spec().rank() == 1)
    return element_from_json(group, Json::array({j}));
  if (!j.is_array())
    throw ParseError("expected a group element, got " + j.dump());
  Element e;
  for (const auto &x : j) {
    if (!x.is_number_integer())
      throw ParseError("element residues must be integers: " + j.dump());
    e.residues.push_back(x.get<long>());
  }
  try {
    return group.index_of(e);
  } catch (const DomainError &err) {
    throw ParseError("element " + j.dump() + ": " + err.what());
  }
}

Json support_to_json(const Support &s) {
  const auto &group = *s.group();
  Json out = Json::array();
  for (std::size_t p : s.indices()) {
    auto [g, h] = group.pairs().at(p);
    out.push_back(Json::array({element_to_json(group, g), element_to_json(group, h)}));
  }
  return out;
}

Support support_from_json(const GroupPtr &group, const Json &j) {
  if (j.is_string()) {
    const auto word = j.get<std::string>();
    if (word == "full")
      return Support::full(group);
    if (word == "empty")
      return Support::empty(group);
    throw ParseError("unknown support keyword '" + word + "' (expected full, empty or a list of pairs)");
  }
  if (!j.is_array())
    throw ParseError("support must be a list of pairs");
  Support s(group);
  for (const auto &entry : j) {
    if (entry.is_string()) {
      s.insert(group->parse_pair_key(entry.get<std::string>()));
    } else if (entry.is_array() && entry.size() == 2) {
      s.insert(group->pair(element_from_json(*group, entry[0]), element_from_json(*group, entry[1])));
    } else {
      throw ParseError("malformed support entry " + entry.dump());
    }
  }
  return s;
}

Json contraction_to_json(const Contraction &c) {
  Json out = Json::object();
  for (const auto &[p, v] : c.values())
    out[c.group()->pair_key(p)] = v.get_str();
  return out;
}

Contraction contraction_from_json(const GroupPtr &group, const Json &j) {
  if (!j.is_object())
    throw ParseError("contraction must be a JSON object mapping \"g|h\" to rationals");
  std::map<std::size_t, Rational> values;
  for (const auto &[key, v] : j.items()) {
    const std::size_t p = group->parse_pair_key(key);
    if (values.contains(p))
      throw ParseError("pair " + group->pair_key(p) + " given twice");
    values.emplace(p, rational_from_json(v));
  }
  return Contraction(group, values);
}

Json algebra_to_json(const GradedAlgebra &a) {
  Json degrees = Json::array();
  for (std::size_t d : a.degrees())
    degrees.push_back(element_to_json(*a.group(), d));
  Json brackets = Json::array();
  for (const auto &[key, v] : a.structure()) {
    Json terms = Json::array();
    for (const auto &[k, c] : v)
      terms.push_back({{"k", k}, {"c", c.get_str()}});
    brackets.push_back({{"i", key.first}, {"j", key.second}, {"terms", terms}});
  }
  return {{"group", a.group()->spec().to_string()}, {"degrees", degrees}, {"brackets", brackets}};
}

GradedAlgebra algebra_from_json(const Json &j, const GroupPtr &group) {
  if (!j.is_object() || !j.contains("group") || !j.contains("degrees"))
    throw ParseError("algebra JSON needs \"group\" and \"degrees\"");
  if (!j["group"].is_string())
    throw ParseError("\"group\" must be a string");
  const GroupSpec spec = parse_group(j["group"].get<std::string>());
  if (group && group->spec() != spec)
    throw ParseError("algebra is graded by " + spec.to_string() + ", expected " + group->spec().to_string());
  const GroupPtr g = group ? group : AbelianGroup::make(spec);

  if (!j["degrees"].is_array())
    throw ParseError("\"degrees\" must be a list of elements");
  std::vector<std::size_t> degrees;
  for (const auto &d : j["degrees"])
    degrees.push_back(element_from_json(*g, d));
  const std::size_t n = degrees.size();

  StructureConstants st;
  const Json brackets = j.value("brackets", Json::array());
  if (!brackets.is_array())
    throw ParseError("\"brackets\" must be a list");
  for (const auto &b : brackets) {
    if (!b.is_object() || !b.contains("i") || !b.contains("j") || !b["i"].is_number_unsigned() ||
        !b["j"].is_number_unsigned())
      throw ParseError("bracket entries need nonnegative integers \"i\" and \"j\": " + b.dump());
    const auto i = b["i"].get<std::size_t>(), jj = b["j"].get<std::size_t>();
    if (i >= n || jj >= n)
      throw ParseError("bracket index out of range: " + b.dump());
    SparseVector v;
    for (const auto &t : b.value("terms", Json::array())) {
      if (!t.is_object() || !t.contains("k") || !t["k"].is_number_unsigned() || !t.contains("c"))
        throw ParseError("bracket terms need \"k\" and \"c\": " + t.dump());
      const auto k = t["k"].get<std::size_t>();
      if (k >= n)
        throw ParseError("term index out of range: " + t.dump());
      Rational c = rational_from_json(t["c"]);
      if (i > jj)
        c = -c;
      v[k] += c;
    }
    std::erase_if(v, [](const auto &kv) { return sgn(kv.second) == 0; });
    if (i == jj) {
      if (!v.empty())
        throw ValidationError("antisymmetry violated: [x" + std::to_string(i) + ",x" + std::to_string(i) +
                              "] must be zero");
      continue;
    }
    const auto key = std::make_pair(std::min(i, jj), std::max(i, jj));
    auto [it, fresh] = st.emplace(key, v);
    if (!fresh && it->second != v)
      throw ValidationError("antisymmetry violated: [x" + std::to_string(key.first) + ",x" +
                            std::to_string(key.second) + "] given inconsistently");
  }
  return GradedAlgebra(g, std::move(degrees), std::move(st));
}

Json integers_to_json(const std::vector<Integer> &v) {
  Json out = Json::array();
  for (const auto &x : v) {
    if (x.fits_slong_p())
      out.push_back(x.get_si());
    else
      out.push_back(x.get_str());
  }
  return out;
}

Json structure_to_json(const AbelianGroupStructure &s) {
  return {{"free_rank", s.free_rank}, {"torsion", integers_to_json(s.torsion)}, {"text", s.to_string()}};
}

Json descriptor_to_json(const H2Descriptor &d) {
  Json out = {{"field", to_string(d.mode)},
              {"continuous_rank", d.continuous_rank},
              {"torsion_dual", integers_to_json(d.torsion_dual)},
              {"sign_rank", d.sign_rank}};
  if (d.mode == FieldMode::real_closed) {
    out["kS_sign_rank"] = d.kernel_sign_rank;
    out["sign_classes"] = sign_class_count(d).get_str();
  }
  return out;
}

Json binomial_to_json(const Binomial &b, const AbelianGroup &group) {
  auto monomial = [&](const std::vector<long> &e) {
    Json out = Json::object();
    for (std::size_t p = 0; p < e.size(); ++p)
      if (e[p])
        out[group.pair_key(p)] = e[p];
    return out;
  };
  return {{"lhs", monomial(b.lhs)},
          {"rhs", monomial(b.rhs)},
          {"lhs_coeff", b.lhs_coeff.get_str()},
          {"rhs_coeff", b.rhs_coeff.get_str()},
          {"text", to_text(b, group)}};
}

Json read_json_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw FileError("cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error &e) {
    throw ParseError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path);
  if (!out)
    throw FileError("cannot write '" + path.string() + "'");
  out << text;
  if (!out)
    throw FileError("write to '" + path.string() + "' failed");
}

Json json_argument(std::string_view arg) {
  if (arg == "full" || arg == "empty")
    return Json(std::string(arg));
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string_view::npos && (arg[first] == '[' || arg[first] == '{' || arg[first] == '"')) {
    try {
      return Json::parse(arg);
    } catch (const Json::parse_error &e) {
      throw ParseError("invalid inline JSON: " + std::string(e.what()));
    }
  }
  return read_json_file(std::filesystem::path(arg));
}

Json envelope(std::string_view command, Json group, Json parameters, Json result) {
  return {{"command", command},       {"group", std::move(group)}, {"parameters", std::move(parameters)},
          {"result", std::move(result)}, {"version", kVersion},      {"deterministic", true}};
}

} // namespace gradcon
