#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gmorita/gmorita.hpp"

using namespace gmorita;

namespace {

struct Outcome {
  ValidationReport report;
  json result = json::object();
};

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

/// Any key naming a module; an algebra key stands for its regular module.
GradedModule module_or_regular(const Workspace& ws, const std::string& key) {
  if (ws.has("algebras", key)) return regular_module(ws.algebra(key));
  return ws.module(key);
}

json names_of(const GradedAlgebra& A, const Matrix& inclusion) {
  json out = json::array();
  for (std::size_t c = 0; c < inclusion.cols(); ++c) {
    std::string term;
    for (std::size_t r = 0; r < inclusion.rows(); ++r) {
      const Scalar& s = inclusion(r, c);
      if (s.is_zero()) continue;
      if (!term.empty()) term += " + ";
      if (!s.is_one()) term += s.to_short_string() + "*";
      term += A.name(r);
    }
    out.push_back(term.empty() ? "0" : term);
  }
  return out;
}

Outcome run_validate(const Workspace& ws, const std::string& target) {
  std::string kind, key = target;
  if (auto colon = target.find(':'); colon != std::string::npos) {
    kind = target.substr(0, colon);
    key = target.substr(colon + 1);
  } else {
    const auto section = ws.section_of(key);
    if (!section) throw Error(ErrorCode::UnknownKey, "no entry '" + key + "'");
    if (*section == "algebras") kind = "algebra";
    else if (*section == "modules") kind = ws.doc().at("modules").at(key).contains("over") ? "bimodule" : "module";
    else if (*section == "actions") kind = "action";
    else if (*section == "zetas") kind = "zeta";
    else if (*section == "contexts") kind = "context";
    else throw Error(ErrorCode::KindMismatch, "groups carry no checks");
  }
  Outcome out;
  if (kind == "algebra") {
    out.report = check_graded_algebra(*ws.algebra(key));
  } else if (kind == "module") {
    out.report = check_graded_module(ws.module(key));
  } else if (kind == "action") {
    out.report = check_g_acted_algebra(ws.acted(key));
  } else if (kind == "zeta") {
    out.report = check_algebra_over_c(ws.over(key));
  } else if (kind == "bimodule") {
    const BimoduleOverC X = ws.bimodule_over_c(key);
    out.report = check_bimodule_over_c(X);
    const ValidationReport prime = condition_three_prime(X);
    if (const auto* e = prime.find("Condition3Prime")) out.report.record(e->axiom, e->law, e->passed ? std::nullopt : std::optional<json>(e->witness));
  } else if (kind == "context") {
    out.report = check_context(ws.context(key));
  } else {
    throw Error(ErrorCode::KindMismatch, "unknown object kind '" + kind + "'");
  }
  return out;
}

Outcome run_analyze(const Workspace& ws, const std::string& key, const std::string& what, const std::string& with, const std::string& out_path) {
  Outcome out;
  WorkspaceWriter writer(ws.field());
  if (what == "centralizer") {
    if (!ws.has("algebras", key)) throw Error(ErrorCode::KindMismatch, "centralizer needs an algebra key");
    const AlgebraPtr A = ws.algebra(key);
    const auto B = identity_component(A);
    const auto C = centralizer(A, B);
    out.result["dims"] = dims_json(A->group(), C.sub->component_dims());
    out.result["basis"] = names_of(*A, C.inclusion);
    const auto Z = center_of(B.sub);
    const auto C1 = C.sub->component_dims()[A->group().identity().index];
    out.report.record("CenterEquality", "C_A(B)_1 = Z(B)",
                      C1 == Z.sub->dim() ? std::nullopt : std::optional<json>(json{{"C_1", C1}, {"Z(B)", Z.sub->dim()}}));
    writer.add_algebra("C", C.sub);
    if (auto cp = find_crossed_product(A)) {
      const GActedAlgebra act = miyashita_action(A, C, *cp);
      out.report.merge(check_g_acted_algebra(act), "Action.");
      writer.add_action("C", act);
    } else {
      out.result["action"] = "none: not a crossed product";
    }
  } else if (what == "stabilizer") {
    const Subgroup S = stabilizer(module_or_regular(ws, key));
    out.result["stabilizer"] = S.labels();
    out.result["g_invariant"] = S.is_whole_group();
  } else if (what == "hom") {
    const GradedModule M = module_or_regular(ws, key);
    const GradedModule N = module_or_regular(ws, with.empty() ? key : with);
    const HomSpace H = hom_graded(M, N);
    out.result["dim"] = H.dim();
    out.result["dims"] = dims_json(M.group(), H.component_dims(M.group()));
    std::size_t sum = 0;
    for (auto d : H.component_dims(M.group())) sum += d;
    out.report.record("DegreeDecomposition", "sum_g dim Hom_g = dim Hom",
                      sum == H.dim() ? std::nullopt : std::optional<json>(json{{"sum", sum}, {"dim", H.dim()}}));
  } else if (what == "endop") {
    const EndOp E = end_op_algebra(module_or_regular(ws, key));
    out.result["dims"] = dims_json(E.algebra->group(), E.algebra->component_dims());
    out.report.merge(check_graded_algebra(*E.algebra), "EndOp.");
    out.report.merge(check_graded_module(E.bimodule), "P.");
    out.result["crossed_product"] = find_crossed_product(E.algebra).has_value();
    writer.add_algebra("A", E.bimodule.left_algebra());
    writer.add_algebra("Aprime", E.algebra);
    writer.add_module("P", E.bimodule);
  } else if (what == "dual") {
    const Dual D = dual_module(module_or_regular(ws, key));
    out.result["dims"] = dims_json(D.bimodule.group(), D.bimodule.component_dims());
    out.report.merge(check_graded_module(D.bimodule), "Dual.");
    writer.add_algebra("A", D.bimodule.right_algebra());
    writer.add_algebra("Aprime", D.bimodule.left_algebra());
    writer.add_module("Pdual", D.bimodule);
  } else if (what == "context") {
    const GradedModule P = module_or_regular(ws, key);
    const AlgebraPtr A = P.as_left().left_algebra();
    const auto cp = find_crossed_product(A);
    const bool canonical = cp && is_g_invariant(P);
    const MoritaContext ctx = canonical ? build_canonical_context(canonical_over_c(A, *cp), P) : build_graded_context(P);
    out.report = check_context(ctx);
    const auto pd = progenerator_data(P);
    out.result["over_c"] = canonical;
    out.result["surjective"] = is_surjective_context(ctx);
    out.result["progenerator"] = pd.progenerator();
    out.result["trace_ideal_rank"] = pd.trace_ideal_rank;
    out.result["Aprime_dims"] = dims_json(A->group(), ctx.Aprime->component_dims());
    writer.add_algebra("A", ctx.A);
    writer.add_algebra("Aprime", ctx.Aprime);
    using Keys = std::optional<std::pair<std::string, std::string>>;
    Keys over, over_rev;
    if (ctx.is_over_c()) {
      writer.add_action("C", ctx.over_A->C);
      writer.add_zeta("X", *ctx.over_A, "C");
      writer.add_zeta("Xprime", *ctx.over_Aprime, "C");
      over = Keys{{"X", "Xprime"}};
      over_rev = Keys{{"Xprime", "X"}};
    }
    writer.add_context("ctx", ctx, writer.add_module("M", ctx.M, over), writer.add_module("Mprime", ctx.Mprime, over_rev), over);
  } else {
    throw Error(ErrorCode::KindMismatch, "unknown analysis '" + what + "'");
  }
  if (!out_path.empty()) writer.write(out_path);
  return out;
}

Outcome run_morita(const Workspace& ws, const std::string& key, const std::string& level, const std::string& samples_csv) {
  const MoritaContext ctx = ws.context(key);
  std::vector<Sample> samples;
  if (samples_csv.empty()) {
    samples = default_samples(ctx);
  } else {
    for (const auto& k : split_csv(samples_csv)) samples.push_back({k, module_or_regular(ws, k).as_left()});
  }
  Outcome out;
  auto not_surjective = [&] {
    out.report.fail("Surjective", "f and g are bijective", json{{"code", to_string(ErrorCode::NotSurjective)}});
  };
  if (level == "check") {
    out.report = check_context(ctx);
  } else if (level == "surjective") {
    const bool s = is_surjective_context(ctx);
    out.result["surjective"] = s;
    if (s) out.report.pass("Surjective", "f and g are bijective");
    else not_surjective();
  } else if (level == "morita1") {
    try {
      out.report = verify_morita_I(ctx, samples);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotSurjective) throw;
      not_surjective();
    }
  } else if (level == "morita2") {
    if (!is_surjective_context(ctx)) {
      not_surjective();
    } else {
      const auto [QF, QG, W] = witnesses_from_context(ctx);
      out.report = verify_morita_II(QF, QG, W, samples);
      out.report.merge(check_uniqueness(ctx), "Uniqueness.");
    }
  } else {
    throw Error(ErrorCode::KindMismatch, "unknown level '" + level + "'");
  }
  return out;
}

json report_json(const std::vector<std::string>& command, const Outcome& o) {
  std::vector<CheckEntry> entries = o.report.entries();
  std::stable_sort(entries.begin(), entries.end(), [](const CheckEntry& a, const CheckEntry& b) { return a.axiom < b.axiom; });
  json checks = json::array();
  std::size_t failed = 0;
  for (const auto& e : entries) {
    checks.push_back({{"name", e.axiom}, {"law", e.law}, {"status", e.passed ? "pass" : "fail"}, {"witness", e.witness}});
    if (!e.passed) ++failed;
  }
  json out = {{"command", command}, {"checks", checks}};
  if (!o.result.empty()) out["result"] = o.result;
  out["summary"] = {{"total", entries.size()}, {"passed", entries.size() - failed}, {"failed", failed}, {"status", failed ? "fail" : "pass"}};
  return out;
}

void print_text(const json& r) {
  for (const auto& c : r["checks"]) {
    std::cout << (c["status"] == "pass" ? "pass  " : "FAIL  ") << c["name"].get<std::string>();
    if (c["status"] != "pass") std::cout << "  " << c["law"].get<std::string>() << "  " << c["witness"].dump();
    std::cout << "\n";
  }
  if (r.contains("result"))
    for (auto it = r["result"].begin(); it != r["result"].end(); ++it) std::cout << it.key() << ": " << it.value().dump() << "\n";
  const auto& s = r["summary"];
  std::cout << s["status"].get<std::string>() << ": " << s["passed"].get<std::size_t>() << "/" << s["total"].get<std::size_t>() << " checks passed\n";
}

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError:
    case ErrorCode::ScalarKindMismatch:
      return 2;
    case ErrorCode::UnknownKey:
    case ErrorCode::KindMismatch:
      return 3;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graded Morita theory checker"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string field_flag;
  bool as_json = false;
  app.add_option("--field", field_flag, "Q or Fp:<p>; overrides the workspace field");
  app.add_flag("--json", as_json, "machine-readable report");

  std::string file, target, object, what, with, out_path, level, samples;
  auto* validate = app.add_subcommand("validate", "run the axiom checker for one object");
  validate->add_option("file", file)->required();
  validate->add_option("target", target, "kind:key or key")->required();

  auto* analyze = app.add_subcommand("analyze", "compute a derived object");
  analyze->add_option("file", file)->required();
  analyze->add_option("object", object)->required();
  analyze->add_option("what", what, "centralizer|stabilizer|hom|endop|dual|context")->required();
  analyze->add_option("--with", with, "second module for hom");
  analyze->add_option("--out", out_path, "write derived objects to a workspace file");

  auto* morita = app.add_subcommand("morita", "verify a Morita context");
  morita->add_option("file", file)->required();
  morita->add_option("context", object)->required();
  morita->add_option("level", level, "check|surjective|morita1|morita2")->required();
  morita->add_option("--samples", samples, "comma-separated module keys");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::vector<std::string> command(argv + 1, argv + argc);
  try {
    std::optional<Field> override;
    if (!field_flag.empty()) override = Field::parse(field_flag);
    const Workspace ws = Workspace::load(file, override);
    Outcome o;
    if (*validate) o = run_validate(ws, target);
    else if (*analyze) o = run_analyze(ws, object, what, with, out_path);
    else o = run_morita(ws, object, level, samples);
    const json r = report_json(command, o);
    if (as_json) std::cout << r.dump(2) << "\n";
    else print_text(r);
    return r["summary"]["failed"].get<std::size_t>() == 0 ? 0 : 1;
  } catch (const Error& e) {
    const json err = {{"command", command}, {"error", {{"code", to_string(e.code())}, {"message", e.what()}}}};
    if (as_json) std::cout << err.dump(2) << "\n";
    else std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  }
}
