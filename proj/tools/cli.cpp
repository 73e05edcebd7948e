#include "cli.hpp"

#include "gradcon/algebra.hpp"
#include "gradcon/error.hpp"
#include "gradcon/io.hpp"
#include "gradcon/orbit.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <sstream>

namespace gradcon::cli {

namespace {

struct Options {
  bool text = false;
  std::size_t threads = 1;
  std::string group;
  // supports
  bool count_only = false;
  // invariants / classify / ideal
  std::string support;
  std::string field = "closed";
  std::string at;
  bool defining = false;
  // degeneration
  std::string contraction;
  std::string supp2;
  std::string base;
  // equivalent
  std::string first;
  std::string second;
  // apply
  std::string algebra;
  std::string out_file;
  // table1
  std::vector<std::string> groups;
};

std::size_t max_order() {
  const char *env = std::getenv("GRADCON_MAX_ORDER");
  if (!env || !*env)
    return kDefaultMaxOrder;
  char *end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1)
    throw ParseError(std::string("GRADCON_MAX_ORDER must be a positive integer, got '") + env + "'");
  return static_cast<std::size_t>(v);
}

GroupPtr load_group(const std::string &text) { return AbelianGroup::make(parse_group(text)); }

Support load_support(const GroupPtr &g, const std::string &arg) { return support_from_json(g, json_argument(arg)); }

Contraction load_contraction(const GroupPtr &g, const std::string &path) {
  return contraction_from_json(g, json_argument(path));
}

Contraction load_valid_contraction(const GroupPtr &g, const std::string &path) {
  Contraction c = load_contraction(g, path);
  auto check = check_contraction(c);
  if (!check.ok)
    throw ValidationError("invalid contraction " + path + ": " + check.diagnostic);
  return c;
}

std::string support_text(const Support &s) {
  std::string out = "{";
  for (std::size_t p : s.indices()) {
    if (out.size() > 1)
      out += ", ";
    out += s.group()->pair_key(p);
  }
  return out + "}";
}

std::string ratio_text(std::size_t count, std::size_t pairs) {
  // count / 2^pairs to 3 significant figures, "d.ddE-k"
  const double r = std::ldexp(static_cast<double>(count), -static_cast<int>(pairs));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2E", r);
  std::string s(buf);
  const auto e = s.find('E');
  std::string mant = s.substr(0, e);
  int exp = std::stoi(s.substr(e + 1));
  return mant + "E" + std::to_string(exp);
}

void emit(std::ostream &out, const Json &j) { out << j.dump(2) << "\n"; }

Json row_to_json(const ClassificationRow &row) {
  return {{"support", support_to_json(row.support)},
          {"size", row.support.size()},
          {"n_prime", row.n_prime},
          {"n_doubleprime", row.n_doubleprime},
          {"kernel", structure_to_json(row.kernel_part)},
          {"cokernel", structure_to_json(row.cokernel_part)},
          {"descriptor", descriptor_to_json(row.descriptor)}};
}

std::string torsion_text(const std::vector<Integer> &t) {
  std::string s;
  for (const auto &x : t)
    s += (s.empty() ? "" : ",") + x.get_str();
  return s.empty() ? "-" : s;
}

// ------------------------------------------------------------------ commands

int cmd_supports(const Options &o, std::ostream &out) {
  const GroupPtr g = load_group(o.group);
  ImplicationSystem sys(g);
  if (o.count_only) {
    out << count_supports(sys, max_order()) << "\n";
    return kOk;
  }
  const auto supports = enumerate_supports(sys, max_order());
  if (o.text) {
    out << supports.size() << " supports of " << g->spec().to_string() << " (" << g->pair_count() << " pairs)\n";
    for (const auto &s : supports)
      out << support_text(s) << "\n";
    return kOk;
  }
  Json list = Json::array();
  for (const auto &s : supports)
    list.push_back(support_to_json(s));
  emit(out, envelope("supports", g->spec().to_string(), Json::object(),
                     {{"count", supports.size()}, {"pairs", g->pair_count()}, {"supports", list}}));
  return kOk;
}

int cmd_invariants(const Options &o, std::ostream &out) {
  const GroupPtr g = load_group(o.group);
  const Support s = load_support(g, o.support);
  const RelationComplex rc(g);
  const auto inv = rc.invariants(s);
  const bool closed = is_support(s, ImplicationSystem(g));
  if (o.text) {
    out << "support " << support_text(s) << (closed ? " (closed)" : " (not closed)") << "\n"
        << "|S| = " << s.size() << ", N = " << inv.group_order << ", N' = " << inv.n_prime
        << ", N'' = " << inv.n_doubleprime << "\n"
        << "K_S = " << inv.kernel_part.to_string() << "\n"
        << "I_S = " << inv.image_part.to_string() << "\n"
        << "C_S = " << inv.cokernel_part.to_string() << "\n";
    return kOk;
  }
  auto part = [](const AbelianGroupStructure &a) {
    return Json{{"rank", a.free_rank}, {"torsion", integers_to_json(a.torsion)}, {"text", a.to_string()}};
  };
  Json result = {{"support", support_to_json(s)},
                 {"closed", closed},
                 {"size", s.size()},
                 {"N", inv.group_order},
                 {"N_prime", inv.n_prime},
                 {"N_doubleprime", inv.n_doubleprime},
                 {"K_S", part(inv.kernel_part)},
                 {"I_S", part(inv.image_part)},
                 {"C_S", part(inv.cokernel_part)},
                 {"surviving_identity_rank", inv.surviving_identities.rank()},
                 {"surviving_relator_rank", inv.surviving_relators.rank()}};
  emit(out, envelope("invariants", g->spec().to_string(), {{"support", support_to_json(s)}}, result));
  return kOk;
}

int cmd_classify(const Options &o, std::ostream &out) {
  const GroupPtr g = load_group(o.group);
  const FieldMode mode = parse_field_mode(o.field);
  std::vector<ClassificationRow> rows;
  Json params = {{"field", to_string(mode)}};
  if (!o.support.empty()) {
    const Support s = load_support(g, o.support);
    if (!is_support(s, ImplicationSystem(g)))
      throw ValidationError("support " + support_text(s) + " is not closed under the contraction relations");
    rows.push_back(classify_support(RelationComplex(g), s, mode));
    params["support"] = support_to_json(s);
  } else {
    rows = classify_all(g, mode, o.threads, max_order());
  }
  if (o.text) {
    out << std::left << std::setw(6) << "#" << std::setw(6) << "|S|" << std::setw(5) << "N'" << std::setw(5)
        << "N''" << std::setw(12) << "K_S" << std::setw(16) << "C_S" << std::setw(11) << "continuous"
        << std::setw(9) << "torsion" << "sign_rank\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto &r = rows[i];
      out << std::setw(6) << i << std::setw(6) << r.support.size() << std::setw(5) << r.n_prime << std::setw(5)
          << r.n_doubleprime << std::setw(12) << r.kernel_part.to_string() << std::setw(16)
          << r.cokernel_part.to_string() << std::setw(11) << r.descriptor.continuous_rank << std::setw(9)
          << torsion_text(r.descriptor.torsion_dual) << r.descriptor.sign_rank << "\n";
    }
    return kOk;
  }
  Json list = Json::array();
  for (const auto &r : rows)
    list.push_back(row_to_json(r));
  Json result = {{"count", rows.size()}, {"rows", list}};
  if (rows.size() == 1 && !o.support.empty())
    result = row_to_json(rows.front());
  emit(out, envelope("classify", g->spec().to_string(), params, result));
  return kOk;
}

int cmd_ideal(const Options &o, std::ostream &out) {
  const GroupPtr g = load_group(o.group);
  std::vector<Binomial> binomials;
  Json params = Json::object();
  std::string kind;
  if (o.defining) {
    binomials = defining_equations(*g);
    kind = "defining_equations";
  } else if (!o.at.empty()) {
    const Contraction c = load_valid_contraction(g, o.at);
    if (!o.support.empty() && !(load_support(g, o.support) == c.support()))
      throw ValidationError("--support differs from the support of the contraction given with --at");
    binomials = orbit_closure_ideal(c);
    params["at"] = contraction_to_json(c);
    params["support"] = support_to_json(c.support());
    kind = "orbit_closure_ideal";
  } else {
    if (o.support.empty())
      throw ParseError("ideal needs --support, --at or --defining");
    const Support s = load_support(g, o.support);
    binomials = surviving_identity_basis(s);
    params["support"] = support_to_json(s);
    kind = "surviving_identity_basis";
  }
  if (o.text) {
    for (const auto &b : binomials)
      out << to_text(b, *g) << "\n";
    return kOk;
  }
  Json list = Json::array();
  for (const auto &b : binomials)
    list.push_back(binomial_to_json(b, *g));
  emit(out, envelope("ideal", g->spec().to_string(), params,
                     {{"kind", kind}, {"count", binomials.size()}, {"binomials", list}}));
  return kOk;
}

int cmd_degeneration(const Options &o, std::ostream &out) {
  const GroupPtr g = load_group(o.group);
  const Contraction c = load_valid_contraction(g, o.contraction);
  Json params = {{"contraction", contraction_to_json(c)}};
  Json result;
  if (!o.base.empty()) {
    const Contraction base = load_valid_contraction(g, o.base);
    params["base"] = contraction_to_json(base);
    result = {{"orbit_inclusion", orbit_inclusion(c, base)}};
  } else {
    if (o.supp2.empty())
      throw ParseError("degeneration needs --supp2 or --base");
    const Support s2 = load_support(g, o.supp2);
    params["supp2"] = support_to_json(s2);
    result = {{"is_degeneration", is_degeneration(c, s2)}};
  }
  if (o.text) {
    for (const auto &[k, v] : result.items())
      out << k << ": " << (v.get<bool>() ? "true" : "false") << "\n";
    return kOk;
  }
  emit(out, envelope("degeneration", g->spec().to_string(), params, result));
  return kOk;
}

int cmd_equivalent(const Options &o, std::ostream &out) {
  const GroupPtr g = load_group(o.group);
  const FieldMode mode = parse_field_mode(o.field);
  const Contraction a = load_valid_contraction(g, o.first);
  const Contraction b = load_valid_contraction(g, o.second);
  const bool eq = equivalent_via_normalization(a, b, mode);
  const std::string note =
      eq ? "equivalent via normalization: the contracted algebras are isomorphic as graded algebras"
         : "not equivalent via normalization; this does not certify that the contracted algebras are non-isomorphic";
  if (o.text) {
    out << note << "\n";
    return kOk;
  }
  emit(out, envelope("equivalent", g->spec().to_string(),
                     {{"field", to_string(mode)}, {"a", contraction_to_json(a)}, {"b", contraction_to_json(b)}},
                     {{"equivalent_via_normalization", eq}, {"note", note}}));
  return kOk;
}

int cmd_apply(const Options &o, std::ostream &out) {
  const GroupPtr g = load_group(o.group);
  const GradedAlgebra a = algebra_from_json(read_json_file(o.algebra), g);
  const Contraction c = load_valid_contraction(g, o.contraction);
  const GradedAlgebra r = apply_contraction(a, c);
  const Json algebra = algebra_to_json(r);
  if (!o.out_file.empty())
    write_text_file(o.out_file, algebra.dump(2) + "\n");
  if (o.text) {
    out << "dimension " << r.dimension() << ", " << r.structure().size() << " nonzero brackets\n"
        << "second support " << support_text(second_support(r)) << "\n";
    return kOk;
  }
  emit(out, envelope("apply", g->spec().to_string(), {{"contraction", contraction_to_json(c)}},
                     {{"algebra", algebra},
                      {"second_support", support_to_json(second_support(r))},
                      {"original_second_support", support_to_json(second_support(a))}}));
  return kOk;
}

int cmd_table1(const Options &o, std::ostream &out) {
  std::vector<std::string> groups = o.groups;
  if (groups.empty())
    groups = {"Z2", "Z3", "Z2^2", "Z4", "Z5", "Z6", "Z7", "Z2^3", "Z2xZ4", "Z8"};
  Json rows = Json::array();
  for (const auto &text : groups) {
    const GroupPtr g = load_group(text);
    const std::size_t count = count_supports(ImplicationSystem(g), max_order());
    rows.push_back({{"group", g->spec().to_string()},
                    {"pairs", g->pair_count()},
                    {"supports", count},
                    {"ratio", ratio_text(count, g->pair_count())}});
  }
  if (o.text) {
    out << std::left << std::setw(10) << "G" << std::setw(8) << "|P_G|" << std::setw(10) << "|S(G)|"
        << "ratio\n";
    for (const auto &r : rows)
      out << std::setw(10) << r["group"].get<std::string>() << std::setw(8) << r["pairs"].get<std::size_t>()
          << std::setw(10) << r["supports"].get<std::size_t>() << r["ratio"].get<std::string>() << "\n";
    return kOk;
  }
  Json names = Json::array();
  for (const auto &r : rows)
    names.push_back(r["group"]);
  emit(out, envelope("table1", names, Json::object(), {{"rows", rows}}));
  return kOk;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  Options o;
  CLI::App app("Generic graded contractions of finite abelian groups", "gradcon");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  app.add_flag("--text", o.text, "Human-readable output instead of JSON");
  app.add_option("--threads", o.threads, "Worker threads for sweep commands")->check(CLI::PositiveNumber);

  auto group_arg = [&](CLI::App *sub) {
    sub->add_option("group", o.group, "Group, e.g. Z2, Z2xZ4, Z2^3")->required();
    sub->add_flag("--text", o.text, "Human-readable output instead of JSON");
    sub->add_flag("--json", [&](std::int64_t) { o.text = false; }, "JSON output (default)");
    sub->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  };

  auto *supports = app.add_subcommand("supports", "Enumerate all contraction supports");
  group_arg(supports);
  supports->add_flag("--count-only", o.count_only, "Print only the number of supports");

  auto *invariants = app.add_subcommand("invariants", "Lattice invariants of a subset of pairs");
  group_arg(invariants);
  invariants->add_option("--support", o.support, "full, empty, inline JSON or a JSON file")->required();

  auto *classify = app.add_subcommand("classify", "Classification descriptors per support");
  group_arg(classify);
  classify->add_option("--field", o.field, "closed or real")->check(CLI::IsMember({"closed", "real"}));
  classify->add_option("--support", o.support, "Single support instead of all");

  auto *ideal = app.add_subcommand("ideal", "Surviving identities and orbit-closure binomials");
  group_arg(ideal);
  ideal->add_option("--support", o.support, "Support (full, empty, inline JSON or file)");
  ideal->add_option("--at", o.at, "Contraction file: emit the orbit-closure ideal at it");
  ideal->add_flag("--defining", o.defining, "Emit the defining equations of the contraction variety");

  auto *degeneration = app.add_subcommand("degeneration", "Degeneration and orbit-inclusion tests");
  group_arg(degeneration);
  degeneration->add_option("--contraction", o.contraction, "Contraction file")->required();
  degeneration->add_option("--supp2", o.supp2, "Second support of the target algebra");
  degeneration->add_option("--base", o.base, "Base contraction for the orbit-inclusion test");

  auto *equivalent = app.add_subcommand("equivalent", "Decide equivalence via normalization");
  group_arg(equivalent);
  equivalent->add_option("--field", o.field, "closed or real")->check(CLI::IsMember({"closed", "real"}));
  equivalent->add_option("a", o.first, "First contraction file")->required();
  equivalent->add_option("b", o.second, "Second contraction file")->required();

  auto *apply = app.add_subcommand("apply", "Apply a contraction to a graded Lie algebra");
  group_arg(apply);
  apply->add_option("--algebra", o.algebra, "Algebra JSON file")->required();
  apply->add_option("--contraction", o.contraction, "Contraction file")->required();
  apply->add_option("--out", o.out_file, "Write the contracted algebra here");

  auto *table1 = app.add_subcommand("table1", "Number of supports per group");
  table1->add_option("groups", o.groups, "Groups (default: all groups of order 2 to 8)");
  table1->add_flag("--text", o.text, "Human-readable output instead of JSON");
  table1->add_flag("--json", [&](std::int64_t) { o.text = false; }, "JSON output (default)");
  table1->add_option("--threads", o.threads, "Accepted for uniformity; counting is sequential")
      ->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*supports)
      return cmd_supports(o, out);
    if (*invariants)
      return cmd_invariants(o, out);
    if (*classify)
      return cmd_classify(o, out);
    if (*ideal)
      return cmd_ideal(o, out);
    if (*degeneration)
      return cmd_degeneration(o, out);
    if (*equivalent)
      return cmd_equivalent(o, out);
    if (*apply)
      return cmd_apply(o, out);
    if (*table1)
      return cmd_table1(o, out);
  } catch (const ValidationError &e) {
    err << "gradcon: validation failed: " << e.what() << "\n";
    return kValidationError;
  } catch (const ParseError &e) {
    err << "gradcon: " << e.what() << "\n";
    return kInputError;
  } catch (const FileError &e) {
    err << "gradcon: " << e.what() << "\n";
    return kInputError;
  } catch (const DomainError &e) {
    err << "gradcon: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

} // namespace gradcon::cli
