#include <filesystem>
#include <iostream>

#include "gmorita/fixtures.hpp"
#include "gmorita/gmorita.hpp"

using namespace gmorita;
namespace fs = std::filesystem;

namespace {

using OverKeys = std::optional<std::pair<std::string, std::string>>;

/// Adds ζ-structure X over the centralizer action "C" of A.
void add_canonical(WorkspaceWriter& w, const AlgebraOverC& X) {
  w.add_algebra("CA", X.C.algebra);
  w.add_action("C", X.C);
  w.add_zeta("X", X, "C");
}

void write_context(WorkspaceWriter& w, const std::string& key, const MoritaContext& ctx, const std::string& prefix) {
  w.add_algebra("Aprime", ctx.Aprime);
  w.add_zeta("Xprime", *ctx.over_Aprime, "C");
  const std::string M = w.add_module(prefix + "M", ctx.M, OverKeys{{"X", "Xprime"}});
  const std::string Mp = w.add_module(prefix + "Mprime", ctx.Mprime, OverKeys{{"Xprime", "X"}});
  w.add_context(key, ctx, M, Mp, OverKeys{{"X", "Xprime"}});
}

void e1(const fs::path& dir) {
  const AlgebraPtr A = fixtures::e1();
  const GroupElt s{1};
  const auto X = canonical_over_c(A);
  WorkspaceWriter w(A->field());
  w.add_algebra("A", A);
  w.add_module("regular", regular_module(A));
  w.add_module("As", suspend(regular_module(A), s));
  w.add_module("P", direct_sum(regular_module(A), suspend(regular_module(A), s)));
  w.add_module("bimodule", regular_bimodule(A), OverKeys{{"X", "X"}});
  add_canonical(w, X);
  const auto Z = ground_over_c(A, X.cp);
  w.add_algebra("k", Z.C.algebra);
  w.add_action("K", Z.C);
  w.add_zeta("Z", Z, "K");
  w.write((dir / "e1.json").string());
}

void e1_ctx(const fs::path& dir) {
  const AlgebraPtr A = fixtures::e1();
  const GroupElt s{1};
  const auto X = canonical_over_c(A);
  const GradedModule P = direct_sum(regular_module(A), suspend(regular_module(A), s));
  const MoritaContext ctx = build_canonical_context(X, P);
  WorkspaceWriter w(A->field());
  w.add_algebra("A", A);
  w.add_module("As", suspend(regular_module(A), s));
  w.add_module("P", P);
  add_canonical(w, X);
  write_context(w, "ctx", ctx, "");

  // σ = diag(1, -1) twists M' on the right and M on the left; f picks up σ⁻¹.
  const Field& f = A->field();
  Matrix sigma = Matrix::identity(f, 2);
  sigma(1, 1) = f.from_int(-1);
  const auto [QF, QG, W] = witnesses_from_context(ctx);
  const auto [F2, G2, W2] = twist_by_automorphism(QF, QG, W, sigma);
  MoritaContext tw = ctx;
  tw.M = G2.bimodule.M;
  tw.Mprime = F2.bimodule.M;
  for (auto& row : tw.f)
    for (auto& v : row) v = sigma * v;
  write_context(w, "twisted", tw, "twisted_");
  w.write((dir / "e1-ctx.json").string());
}

void e2(const fs::path& dir) {
  const AlgebraPtr A = fixtures::e2();
  WorkspaceWriter w(A->field());
  w.add_algebra("A", A);
  w.add_module("regular", regular_module(A));
  w.add_module("column", fixtures::e2_column_module(A));
  w.add_module("P", regular_module(A));
  add_canonical(w, canonical_over_c(A));
  w.write((dir / "e2.json").string());
}

void e2_ctx(const fs::path& dir) {
  const AlgebraPtr A = fixtures::e2();
  const auto X = canonical_over_c(A);
  const MoritaContext ctx = build_canonical_context(X, regular_module(A));
  WorkspaceWriter w(A->field());
  w.add_algebra("A", A);
  w.add_module("column", fixtures::e2_column_module(A));
  add_canonical(w, X);
  write_context(w, "ctx", ctx, "");
  w.write((dir / "e2-ctx.json").string());
}

void e3(const fs::path& dir) {
  const AlgebraPtr A = fixtures::e3();
  const auto B = identity_component(A);
  WorkspaceWriter w(A->field());
  w.add_algebra("A", A);
  w.add_algebra("B", B.sub);
  w.add_module("regular", regular_module(A));
  w.add_module("U", fixtures::u_chi(B.sub));
  w.add_module("P3", fixtures::p3(A));
  add_canonical(w, canonical_over_c(A));
  w.write((dir / "e3.json").string());
}

/// E1 context on P = A with the pairing f replaced by zero.
void zero_f(const fs::path& dir) {
  const AlgebraPtr A = fixtures::e1();
  MoritaContext ctx = build_graded_context(regular_module(A));
  for (auto& row : ctx.f)
    for (auto& v : row) v = A->zero();
  WorkspaceWriter w(A->field());
  w.add_algebra("A", A);
  w.add_algebra("Aprime", ctx.Aprime);
  w.add_context("ctx", ctx, w.add_module("M", ctx.M), w.add_module("Mprime", ctx.Mprime));
  w.write((dir / "zero-f.json").string());
}

/// E2 context on P = A with g doubled, and E2 with E21·E12 = 2·E22.
void broken_assoc(const fs::path& dir) {
  const AlgebraPtr A = fixtures::e2();
  const Field& f = A->field();
  MoritaContext ctx = build_graded_context(regular_module(A));
  for (auto& row : ctx.g)
    for (auto& v : row) v = f.from_int(2) * v;
  WorkspaceWriter w(f);
  w.add_algebra("A", A);
  w.add_algebra("Aprime", ctx.Aprime);
  w.add_context("ctx", ctx, w.add_module("M", ctx.M), w.add_module("Mprime", ctx.Mprime));
  json doc = w.doc();
  json bad = doc["algebras"]["A"];
  bad["structconst"][2][1] = json::array({"0", "0", "0", "2"});
  doc["algebras"]["bad"] = bad;
  std::ofstream((dir / "broken-assoc.json").string()) << doc.dump(1) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path dir = argc > 1 ? fs::path(argv[1]) : fs::path("fixtures");
  try {
    fs::create_directories(dir);
    e1(dir);
    e1_ctx(dir);
    e2(dir);
    e2_ctx(dir);
    e3(dir);
    zero_f(dir);
    broken_assoc(dir);
  } catch (const std::exception& e) {
    std::cerr << "make_fixtures: " << e.what() << "\n";
    return 1;
  }
  std::cout << "fixtures written to " << dir.string() << "\n";
  return 0;
}
