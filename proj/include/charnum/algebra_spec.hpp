#ifndef CHARNUM_ALGEBRA_SPEC_HPP
#define CHARNUM_ALGEBRA_SPEC_HPP

#include <array>
#include <cstdint>
#include <cstdio>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "charnum/algebra.hpp"
#include "charnum/engine.hpp"
#include "charnum/errors.hpp"
#include "charnum/pencil.hpp"

namespace charnum {

/// Declarative description of an algebra, instantiable over any prime field.
/// JSON schema:
///   {"type":"quotient","vars":[...],"ideal":["x^2", ...]}
///   {"type":"table","dim":n,"unit":u,"constants":[[i,j,k,c],...]}
///   {"type":"family","name":"chain|smooth|cw|trivial","param":d}
///   {"type":"sum","parts":[spec,...]}
/// Shorthand: "chain(4)", "family:cw(3)", "chain(2)+chain(2)".
class AlgebraSpec {
public:
  struct Quotient {
    std::vector<std::string> vars;
    std::vector<std::string> ideal;
  };
  struct Table {
    int dim = 0;
    int unit = 0;
    std::vector<std::array<long long, 4>> constants;
  };
  struct Family {
    AlgebraFamily name = AlgebraFamily::Chain;
    int param = 1;
  };

  using Node = std::variant<Quotient, Table, Family, std::vector<AlgebraSpec>>;

  AlgebraSpec() : node_(Family{}) {}
  explicit AlgebraSpec(Node node) : node_(std::move(node)) {}

  static AlgebraSpec quotient(std::vector<std::string> vars, std::vector<std::string> ideal) {
    return AlgebraSpec(Quotient{std::move(vars), std::move(ideal)});
  }
  static AlgebraSpec family(AlgebraFamily name, int param) {
    return AlgebraSpec(Family{name, param});
  }
  static AlgebraSpec sum(std::vector<AlgebraSpec> parts) {
    if (parts.empty()) throw InputError("sum spec needs at least one part");
    return AlgebraSpec(std::move(parts));
  }

  const Node& node() const { return node_; }

  static AlgebraSpec from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("type"))
      throw InputError("algebra spec must be an object with a \"type\" field");
    const std::string type = j.at("type").get<std::string>();
    if (type == "quotient") {
      Quotient q;
      q.vars = j.at("vars").get<std::vector<std::string>>();
      q.ideal = j.at("ideal").get<std::vector<std::string>>();
      return AlgebraSpec(std::move(q));
    }
    if (type == "table") {
      Table t;
      t.dim = j.at("dim").get<int>();
      t.unit = j.at("unit").get<int>();
      for (const auto& e : j.at("constants")) {
        if (!e.is_array() || e.size() != 4)
          throw InputError("table constants must be [i,j,k,c] quadruples");
        t.constants.push_back({e[0].get<long long>(), e[1].get<long long>(),
                               e[2].get<long long>(), e[3].get<long long>()});
      }
      return AlgebraSpec(std::move(t));
    }
    if (type == "family") {
      Family f;
      f.name = family_from_name(j.at("name").get<std::string>());
      f.param = j.at("param").get<int>();
      return AlgebraSpec(f);
    }
    if (type == "sum") {
      std::vector<AlgebraSpec> parts;
      for (const auto& p : j.at("parts")) parts.push_back(from_json(p));
      return sum(std::move(parts));
    }
    throw InputError("unknown algebra spec type: " + type);
  }

  /// Accepts inline JSON or the family shorthand ("chain(4)", "cw(3)",
  /// optionally "family:" prefixed, summed with '+').
  static AlgebraSpec parse(const std::string& text) {
    std::string t = trim(text);
    if (t.empty()) throw InputError("empty algebra spec");
    if (t.front() == '{') {
      nlohmann::json j = nlohmann::json::parse(t, nullptr, false);
      if (j.is_discarded()) throw InputError("algebra spec is not valid JSON");
      return from_json(j);
    }
    std::vector<AlgebraSpec> parts;
    std::size_t start = 0;
    while (start <= t.size()) {
      std::size_t plus = t.find('+', start);
      std::string piece = trim(t.substr(start, plus == std::string::npos ? plus : plus - start));
      parts.push_back(parse_shorthand(piece));
      if (plus == std::string::npos) break;
      start = plus + 1;
    }
    if (parts.size() == 1) return parts.front();
    return sum(std::move(parts));
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    if (const auto* q = std::get_if<Quotient>(&node_)) {
      j["type"] = "quotient";
      j["vars"] = q->vars;
      j["ideal"] = q->ideal;
    } else if (const auto* t = std::get_if<Table>(&node_)) {
      j["type"] = "table";
      j["dim"] = t->dim;
      j["unit"] = t->unit;
      auto arr = nlohmann::json::array();
      for (const auto& e : t->constants) arr.push_back({e[0], e[1], e[2], e[3]});
      j["constants"] = arr;
    } else if (const auto* f = std::get_if<Family>(&node_)) {
      j["type"] = "family";
      j["name"] = family_name(f->name);
      j["param"] = f->param;
    } else {
      j["type"] = "sum";
      auto arr = nlohmann::json::array();
      for (const auto& p : std::get<std::vector<AlgebraSpec>>(node_)) arr.push_back(p.to_json());
      j["parts"] = arr;
    }
    return j;
  }

  std::string canonical_string() const { return to_json().dump(); }

  FiniteAlgebra instantiate(const PrimeField& F) const {
    if (const auto* q = std::get_if<Quotient>(&node_))
      return FiniteAlgebra::from_quotient(F, q->vars, q->ideal);
    if (const auto* t = std::get_if<Table>(&node_))
      return FiniteAlgebra::from_table(F, t->dim, t->constants, t->unit);
    if (const auto* f = std::get_if<Family>(&node_))
      return FiniteAlgebra::family(F, f->name, f->param);
    const auto& parts = std::get<std::vector<AlgebraSpec>>(node_);
    FiniteAlgebra acc = parts.front().instantiate(F);
    for (std::size_t i = 1; i < parts.size(); ++i)
      acc = FiniteAlgebra::direct_sum(acc, parts[i].instantiate(F));
    return acc;
  }

  AlgebraFactory algebra_factory() const {
    AlgebraSpec copy = *this;
    return [copy](const PrimeField& F) { return copy.instantiate(F); };
  }

  PencilFactory pencil_factory() const {
    AlgebraSpec copy = *this;
    return [copy](const PrimeField& F) {
      return SymmetricPencil::from_algebra(copy.instantiate(F));
    };
  }

  /// FNV-1a digest of the canonical JSON dump, for run records.
  std::string digest() const {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : canonical_string()) {
      h ^= c;
      h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
  }

private:
  Node node_;

  static std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
  }

  static AlgebraFamily family_from_name(const std::string& name) {
    if (name == "chain") return AlgebraFamily::Chain;
    if (name == "smooth") return AlgebraFamily::Smooth;
    if (name == "cw") return AlgebraFamily::Cw;
    if (name == "trivial") return AlgebraFamily::Trivial;
    throw InputError("unknown family name: " + name);
  }

  static AlgebraSpec parse_shorthand(const std::string& piece) {
    std::string t = piece;
    const std::string prefix = "family:";
    if (t.rfind(prefix, 0) == 0) t = t.substr(prefix.size());
    std::size_t open = t.find('(');
    std::size_t close = t.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
      throw InputError("expected NAME(PARAM) in spec shorthand, got: " + piece);
    std::string name = trim(t.substr(0, open));
    std::string arg = trim(t.substr(open + 1, close - open - 1));
    int param = 0;
    try {
      param = std::stoi(arg);
    } catch (...) {
      throw InputError("family parameter must be an integer, got: " + arg);
    }
    return family(family_from_name(name), param);
  }
};

}  // namespace charnum

#endif
