#pragma once

#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gmorita/morita.hpp"

namespace gmorita {

/// One-file JSON workspace: named groups, algebras, modules, G-actions,
/// ζ-structures and contexts that refer to each other by key.
class Workspace {
 public:
  static constexpr const char* sections[] = {"groups", "algebras", "modules", "actions", "zetas", "contexts"};

  explicit Workspace(json doc, std::optional<Field> field_override = std::nullopt) : doc_(std::move(doc)), override_(field_override) {
    if (!doc_.is_object()) throw Error(ErrorCode::ParseError, "workspace must be a JSON object");
    for (auto it = doc_.begin(); it != doc_.end(); ++it) {
      const std::string& k = it.key();
      if (k == "field") continue;
      if (std::find_if(std::begin(sections), std::end(sections), [&](const char* s) { return k == s; }) == std::end(sections))
        throw Error(ErrorCode::ParseError, "unknown workspace section '" + k + "'");
      if (!it.value().is_object()) throw Error(ErrorCode::ParseError, "section '" + k + "' must be an object");
    }
    default_field_ = override_ ? *override_ : doc_.contains("field") ? Field::parse(string_at(doc_, "field", "workspace")) : Field::rationals();
  }

  static Workspace load(const std::string& path, std::optional<Field> field_override = std::nullopt) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
    }
    return Workspace(std::move(doc), field_override);
  }

  const Field& field() const { return default_field_; }
  const json& doc() const { return doc_; }

  bool has(const std::string& section, const std::string& key) const {
    return doc_.contains(section) && doc_.at(section).contains(key);
  }

  /// Section holding `key`, searched in workspace order.
  std::optional<std::string> section_of(const std::string& key) const {
    for (const char* s : sections)
      if (has(s, key)) return std::string(s);
    return std::nullopt;
  }

  FiniteGroup group(const std::string& key) const {
    if (auto it = groups_.find(key); it != groups_.end()) return it->second;
    const json& j = entry("groups", key);
    return groups_.emplace(key, parse_group(j, "group " + key)).first->second;
  }

  AlgebraPtr algebra(const std::string& key) const {
    if (auto it = algebras_.find(key); it != algebras_.end()) return it->second;
    const json& j = entry("algebras", key);
    const std::string where = "algebra " + key;
    try {
      const FiniteGroup G = j.at("group").is_string() ? group(j.at("group").get<std::string>()) : parse_group(j.at("group"), where);
      const Field f = field_for(j, where);
      const std::size_t d = size_at(j, "dim", where);
      const auto deg = degrees(j.at("deg"), G, d, where);
      const json& sc = j.at("structconst");
      if (!sc.is_array() || sc.size() != d) throw Error(ErrorCode::ParseError, where + ": structconst must have dim rows");
      std::vector<std::vector<Vector>> c(d);
      for (std::size_t a = 0; a < d; ++a) {
        if (!sc[a].is_array() || sc[a].size() != d) throw Error(ErrorCode::ParseError, where + ": structconst row length");
        for (std::size_t b = 0; b < d; ++b) c[a].push_back(vector(sc[a][b], f, d, where));
      }
      std::vector<std::string> names;
      if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
      auto A = std::make_shared<const GradedAlgebra>(G, f, deg, std::move(c), vector(j.at("unit"), f, d, where), names);
      return algebras_.emplace(key, A).first->second;
    } catch (const json::exception& e) {
      throw Error(ErrorCode::ParseError, where + ": " + e.what());
    }
  }

  GradedModule module(const std::string& key) const {
    if (auto it = modules_.find(key); it != modules_.end()) return it->second;
    const json& j = entry("modules", key);
    const std::string where = "module " + key;
    try {
      const std::string side = j.value("side", "left");
      const std::size_t m = size_at(j, "dim", where);
      std::optional<Action> left, right;
      auto action = [&](const std::string& alg_key, const json& mats) {
        const AlgebraPtr A = algebra(alg_key);
        if (!mats.is_array() || mats.size() != A->dim()) throw Error(ErrorCode::ParseError, where + ": one action matrix per algebra basis vector");
        Action act{A, {}};
        for (const auto& mj : mats) act.matrices.push_back(matrix(mj, A->field(), m, m, where));
        return act;
      };
      if (side == "left") {
        left = action(string_at(j, "algebra", where), j.at("action"));
      } else if (side == "right") {
        right = action(string_at(j, "algebra", where), j.at("action"));
      } else if (side == "bimodule") {
        left = action(string_at(j, "left_algebra", where), j.at("left_action"));
        right = action(string_at(j, "right_algebra", where), j.at("right_action"));
      } else {
        throw Error(ErrorCode::ParseError, where + ": side must be left, right or bimodule");
      }
      const FiniteGroup& G = left ? left->algebra->group() : right->algebra->group();
      GradedModule M(degrees(j.at("deg"), G, m, where), std::move(left), std::move(right));
      return modules_.emplace(key, std::move(M)).first->second;
    } catch (const json::exception& e) {
      throw Error(ErrorCode::ParseError, where + ": " + e.what());
    }
  }

  GActedAlgebra acted(const std::string& key) const {
    const json& j = entry("actions", key);
    const std::string where = "action " + key;
    try {
      GActedAlgebra C{algebra(string_at(j, "algebra", where)), {}};
      const json& mats = j.at("matrices");
      if (!mats.is_array() || mats.size() != C.algebra->group().order()) throw Error(ErrorCode::ParseError, where + ": one matrix per group element");
      for (const auto& mj : mats) C.action.push_back(matrix(mj, C.algebra->field(), C.algebra->dim(), C.algebra->dim(), where));
      return C;
    } catch (const json::exception& e) {
      throw Error(ErrorCode::ParseError, where + ": " + e.what());
    }
  }

  /// ζ-structure; units default to find_crossed_product when absent.
  AlgebraOverC over(const std::string& key) const {
    const json& j = entry("zetas", key);
    const std::string where = "zeta " + key;
    try {
      GActedAlgebra C = acted(string_at(j, "C", where));
      const AlgebraPtr A = algebra(string_at(j, "algebra", where));
      CrossedProductData cp;
      if (j.contains("units")) {
        std::vector<Vector> units;
        for (const auto& u : j.at("units")) units.push_back(vector(u, A->field(), A->dim(), where));
        cp = make_crossed_product(A, std::move(units));
      } else {
        auto found = find_crossed_product(A);
        if (!found) throw Error(ErrorCode::NotCrossedProduct, where + ": algebra is not a crossed product");
        cp = std::move(*found);
      }
      Matrix z = matrix(j.at("zeta"), A->field(), A->dim(), C.algebra->dim(), where);
      return AlgebraOverC{std::move(C), A, std::move(cp), std::move(z)};
    } catch (const json::exception& e) {
      throw Error(ErrorCode::ParseError, where + ": " + e.what());
    }
  }

  /// Bimodule with "over": {"left": zeta, "right": zeta}.
  BimoduleOverC bimodule_over_c(const std::string& key) const {
    const json& j = entry("modules", key);
    if (!j.contains("over")) throw Error(ErrorCode::KindMismatch, "module " + key + " carries no over-C structure");
    const json& o = j.at("over");
    return BimoduleOverC{over(string_at(o, "left", "module " + key)), over(string_at(o, "right", "module " + key)), module(key)};
  }

  MoritaContext context(const std::string& key) const {
    const json& j = entry("contexts", key);
    const std::string where = "context " + key;
    try {
      MoritaContext ctx{algebra(string_at(j, "A", where)), algebra(string_at(j, "Aprime", where)), std::nullopt, std::nullopt,
                        module(string_at(j, "M", where)), module(string_at(j, "Mprime", where)), {}, {}};
      if (j.contains("over_A")) ctx.over_A = over(string_at(j, "over_A", where));
      if (j.contains("over_Aprime")) ctx.over_Aprime = over(string_at(j, "over_Aprime", where));
      ctx.f = tensor(j.at("f"), ctx.M.dim(), ctx.Mprime.dim(), *ctx.A, where + " f");
      ctx.g = tensor(j.at("g"), ctx.Mprime.dim(), ctx.M.dim(), *ctx.Aprime, where + " g");
      return ctx;
    } catch (const json::exception& e) {
      throw Error(ErrorCode::ParseError, where + ": " + e.what());
    }
  }

 private:
  const json& entry(const std::string& section, const std::string& key) const {
    if (!has(section, key)) {
      if (auto s = section_of(key)) throw Error(ErrorCode::KindMismatch, "'" + key + "' is in " + *s + ", not " + section);
      throw Error(ErrorCode::UnknownKey, "no entry '" + key + "' in " + section);
    }
    return doc_.at(section).at(key);
  }

  static std::string string_at(const json& j, const char* k, const std::string& where) {
    if (!j.contains(k) || !j.at(k).is_string()) throw Error(ErrorCode::ParseError, where + ": missing string field '" + k + "'");
    return j.at(k).get<std::string>();
  }

  static std::size_t size_at(const json& j, const char* k, const std::string& where) {
    if (!j.contains(k) || !j.at(k).is_number_unsigned()) throw Error(ErrorCode::ParseError, where + ": missing count '" + k + "'");
    return j.at(k).get<std::size_t>();
  }

  Field field_for(const json& j, const std::string& where) const {
    if (override_ || !j.contains("field")) return default_field_;
    return Field::parse(string_at(j, "field", where));
  }

  static FiniteGroup parse_group(const json& j, const std::string& where) {
    try {
      auto table = j.at("table").get<std::vector<std::vector<std::uint32_t>>>();
      std::vector<std::string> labels;
      if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
      if (j.contains("order") && j.at("order").get<std::size_t>() != table.size()) throw Error(ErrorCode::ParseError, where + ": order differs from table");
      return FiniteGroup(table, labels);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::ParseError, where + ": " + e.what());
    }
  }

  static std::vector<GroupElt> degrees(const json& j, const FiniteGroup& G, std::size_t n, const std::string& where) {
    if (!j.is_array() || j.size() != n) throw Error(ErrorCode::ParseError, where + ": deg must list one degree per basis vector");
    std::vector<GroupElt> out;
    for (const auto& d : j) {
      if (d.is_number_integer()) {
        const auto i = d.get<long long>();
        if (i < 0 || static_cast<std::size_t>(i) >= G.order()) throw Error(ErrorCode::ParseError, where + ": degree index out of range");
        out.push_back(GroupElt{static_cast<std::uint32_t>(i)});
      } else if (d.is_string()) {
        const auto& labels = G.labels();
        auto it = std::find(labels.begin(), labels.end(), d.get<std::string>());
        if (it == labels.end()) throw Error(ErrorCode::ParseError, where + ": unknown degree label " + d.dump());
        out.push_back(GroupElt{static_cast<std::uint32_t>(it - labels.begin())});
      } else {
        throw Error(ErrorCode::ParseError, where + ": degree must be an index or a label");
      }
      if (out.back().index >= G.order()) throw Error(ErrorCode::ParseError, where + ": degree out of range");
    }
    return out;
  }

  static Scalar scalar(const json& j, const Field& f, const std::string& where) {
    try {
      if (j.is_number_integer()) return f.from_int(j.get<long long>());
      if (j.is_string()) return Scalar::parse(f, j.get<std::string>());
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, where + ": " + e.what());
    }
    throw Error(ErrorCode::ParseError, where + ": scalar must be an integer or a string");
  }

  static Vector vector(const json& j, const Field& f, std::size_t n, const std::string& where) {
    if (!j.is_array() || j.size() != n) throw Error(ErrorCode::ParseError, where + ": vector of length " + std::to_string(n) + " expected");
    Vector v;
    for (const auto& x : j) v.push_back(scalar(x, f, where));
    return v;
  }

  static Matrix matrix(const json& j, const Field& f, std::size_t rows, std::size_t cols, const std::string& where) {
    if (!j.is_array() || j.size() != rows) throw Error(ErrorCode::ParseError, where + ": matrix with " + std::to_string(rows) + " rows expected");
    Matrix m(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      const Vector row = vector(j[r], f, cols, where);
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
    }
    return m;
  }

  static std::vector<std::vector<Vector>> tensor(const json& j, std::size_t n1, std::size_t n2, const GradedAlgebra& A, const std::string& where) {
    if (!j.is_array() || j.size() != n1) throw Error(ErrorCode::ParseError, where + ": pairing tensor has wrong shape");
    std::vector<std::vector<Vector>> t(n1);
    for (std::size_t a = 0; a < n1; ++a) {
      if (!j[a].is_array() || j[a].size() != n2) throw Error(ErrorCode::ParseError, where + ": pairing tensor has wrong shape");
      for (std::size_t b = 0; b < n2; ++b) t[a].push_back(vector(j[a][b], A.field(), A.dim(), where));
    }
    return t;
  }

  json doc_;
  std::optional<Field> override_;
  Field default_field_;
  mutable std::map<std::string, FiniteGroup> groups_;
  mutable std::map<std::string, AlgebraPtr> algebras_;
  mutable std::map<std::string, GradedModule> modules_;
};

inline json to_json(const Scalar& s) { return s.to_string(); }

inline json to_json(const Vector& v) {
  json out = json::array();
  for (const auto& s : v) out.push_back(to_json(s));
  return out;
}

inline json to_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
  return out;
}

inline json degrees_json(const std::vector<GroupElt>& deg) {
  json out = json::array();
  for (auto g : deg) out.push_back(g.index);
  return out;
}

inline json dims_json(const FiniteGroup& G, const std::vector<std::size_t>& dims) {
  json out = json::object();
  for (auto g : G.elements()) out[G.label(g)] = dims[g.index];
  return out;
}

/// Builds a workspace document; algebras and groups referenced by modules
/// are registered under generated keys when not added explicitly.
class WorkspaceWriter {
 public:
  explicit WorkspaceWriter(const Field& f) { doc_["field"] = f.name(); }

  std::string add_group(const std::string& key, const FiniteGroup& G) {
    for (const auto& [k, g] : groups_)
      if (g == G) return k;
    json table = json::array();
    for (const auto& row : G.table()) table.push_back(row);
    doc_["groups"][key] = {{"order", G.order()}, {"table", table}, {"labels", G.labels()}};
    groups_.emplace_back(key, G);
    return key;
  }

  std::string add_algebra(const std::string& key, const AlgebraPtr& A) {
    if (auto k = find_algebra(A)) return *k;
    const std::string gk = add_group(A->group().order() == 2 ? "C2" : "G" + std::to_string(groups_.size()), A->group());
    json sc = json::array();
    for (std::size_t a = 0; a < A->dim(); ++a) {
      json row = json::array();
      for (std::size_t b = 0; b < A->dim(); ++b) row.push_back(to_json(A->product(a, b)));
      sc.push_back(row);
    }
    doc_["algebras"][key] = {{"group", gk},      {"field", A->field().name()}, {"dim", A->dim()}, {"deg", degrees_json(A->degrees())},
                             {"structconst", sc}, {"unit", to_json(A->unit())}, {"names", A->names()}};
    algebras_.emplace_back(key, A);
    return key;
  }

  std::string add_module(const std::string& key, const GradedModule& M, std::optional<std::pair<std::string, std::string>> over = std::nullopt) {
    json j;
    auto mats = [](const Action& a) {
      json out = json::array();
      for (const auto& m : a.matrices) out.push_back(to_json(m));
      return out;
    };
    if (M.is_bimodule()) {
      j["side"] = "bimodule";
      j["left_algebra"] = algebra_key(M.left_algebra());
      j["right_algebra"] = algebra_key(M.right_algebra());
    } else {
      j["side"] = M.has_left() ? "left" : "right";
      j["algebra"] = algebra_key(M.has_left() ? M.left_algebra() : M.right_algebra());
    }
    j["dim"] = M.dim();
    j["deg"] = degrees_json(M.degrees());
    if (M.is_bimodule()) {
      j["left_action"] = mats(M.left());
      j["right_action"] = mats(M.right());
    } else {
      j["action"] = mats(M.has_left() ? M.left() : M.right());
    }
    if (over) j["over"] = {{"left", over->first}, {"right", over->second}};
    doc_["modules"][key] = j;
    return key;
  }

  std::string add_action(const std::string& key, const GActedAlgebra& C) {
    json mats = json::array();
    for (const auto& m : C.action) mats.push_back(to_json(m));
    doc_["actions"][key] = {{"algebra", algebra_key(C.algebra)}, {"matrices", mats}};
    return key;
  }

  std::string add_zeta(const std::string& key, const AlgebraOverC& X, const std::string& action_key) {
    json units = json::array();
    for (const auto& u : X.cp.units) units.push_back(to_json(u));
    doc_["zetas"][key] = {{"C", action_key}, {"algebra", algebra_key(X.A)}, {"zeta", to_json(X.zeta)}, {"units", units}};
    return key;
  }

  std::string add_context(const std::string& key, const MoritaContext& ctx, const std::string& M_key, const std::string& Mprime_key,
                          std::optional<std::pair<std::string, std::string>> over = std::nullopt) {
    auto tensor = [](const std::vector<std::vector<Vector>>& t) {
      json out = json::array();
      for (const auto& row : t) {
        json r = json::array();
        for (const auto& v : row) r.push_back(to_json(v));
        out.push_back(r);
      }
      return out;
    };
    json j = {{"A", algebra_key(ctx.A)}, {"Aprime", algebra_key(ctx.Aprime)}, {"M", M_key}, {"Mprime", Mprime_key}};
    if (over) {
      j["over_A"] = over->first;
      j["over_Aprime"] = over->second;
    }
    j["f"] = tensor(ctx.f);
    j["g"] = tensor(ctx.g);
    doc_["contexts"][key] = j;
    return key;
  }

  const json& doc() const { return doc_; }

  void write(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
    out << doc_.dump(1) << "\n";
  }

 private:
  std::optional<std::string> find_algebra(const AlgebraPtr& A) const {
    for (const auto& [k, a] : algebras_)
      if (a == A) return k;
    for (const auto& [k, a] : algebras_)
      if (*a == *A) return k;
    return std::nullopt;
  }

  std::string algebra_key(const AlgebraPtr& A) {
    if (auto k = find_algebra(A)) return *k;
    return add_algebra("algebra" + std::to_string(algebras_.size()), A);
  }

  json doc_;
  std::vector<std::pair<std::string, FiniteGroup>> groups_;
  std::vector<std::pair<std::string, AlgebraPtr>> algebras_;
};

}  // namespace gmorita
