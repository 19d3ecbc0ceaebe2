#include "qes/io.hpp"

#include <cctype>
#include <string>

namespace qes {

using nlohmann::json;

namespace {

std::string json_var_name(Var v) { return v == Var::Zeta ? "zeta" : std::string(var_name(v)); }

Int integer_of(const json& j, const char* what) {
  if (!j.is_string()) throw std::invalid_argument(std::string(what) + " must be a decimal string");
  const std::string s = j.get<std::string>();
  std::size_t i = s.size() > 0 && s[0] == '-' ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument(std::string(what) + " is empty");
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw std::invalid_argument(std::string(what) + " '" + s + "' is not an integer");
  return Int(s, 10);
}

}  // namespace

json to_json(const MultiPoly& p) {
  const std::vector<Var> vars = p.vars().list();
  json out;
  out["vars"] = json::array();
  for (Var v : vars) out["vars"].push_back(json_var_name(v));
  out["terms"] = json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    json exps = json::array();
    for (Var v : vars) exps.push_back(it->first[static_cast<std::size_t>(v)]);
    out["terms"].push_back({{"exps", exps}, {"num", it->second.get_num().get_str()}, {"den", it->second.get_den().get_str()}});
  }
  return out;
}

MultiPoly multipoly_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vars") || !j.contains("terms") || !j["vars"].is_array() || !j["terms"].is_array())
    throw std::invalid_argument("MultiPoly JSON needs arrays 'vars' and 'terms'");
  std::vector<Var> vars;
  VarSet set;
  for (const auto& v : j["vars"]) {
    if (!v.is_string()) throw std::invalid_argument("variable names must be strings");
    const Var var = var_from_name(v.get<std::string>());
    if (set.contains(var)) throw std::invalid_argument("repeated variable " + v.get<std::string>());
    set = set.with(var);
    vars.push_back(var);
  }
  MultiPoly::TermMap terms;
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("exps") || !t["exps"].is_array() || t["exps"].size() != vars.size())
      throw std::invalid_argument("term exponents must match the variable list");
    Exponents e{};
    for (std::size_t k = 0; k < vars.size(); ++k) {
      const auto& x = t["exps"][k];
      if (!x.is_number_unsigned()) throw std::invalid_argument("exponents must be nonnegative integers");
      e[static_cast<std::size_t>(vars[k])] = x.get<std::uint32_t>();
    }
    const Int den = integer_of(t.value("den", json()), "den");
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rat c(integer_of(t.value("num", json()), "num"), den);
    c.canonicalize();
    if (!terms.emplace(e, c).second) throw std::invalid_argument("repeated exponent vector");
  }
  return MultiPoly::from_terms(std::move(terms), set);
}

json to_json(const PolyFamily& f) {
  json out;
  out["family"] = std::string(parity_tag(f.parity()));
  out["first"] = f.first();
  out["last"] = f.last();
  out["N"] = f.fixed_N() ? json(rat_to_string(*f.fixed_N())) : json(nullptr);
  out["symbolic_N"] = f.symbolic_N();
  out["generator"] = "X_{n+1} = 2(E - 4n^2) X_n + zeta^2 [4N^2 - 2N - n(n-1)] X_{n-1}";
  out["members"] = json::array();
  for (int n = f.first(); n <= f.last(); ++n) out["members"].push_back({{"index", n}, {"poly", to_json(f.at(n))}});
  return out;
}

PolyFamily polyfamily_from_json(const json& j) {
  if (!j.is_object() || !j.contains("family") || !j.contains("members"))
    throw std::invalid_argument("PolyFamily JSON needs 'family' and 'members'");
  const Parity parity = parity_from_tag(j["family"].get<std::string>());
  std::optional<Rat> N;
  if (j.contains("N") && !j["N"].is_null()) N = parse_rat(j["N"].get<std::string>());
  std::vector<MultiPoly> members;
  int expect = first_index(parity);
  for (const auto& m : j["members"]) {
    if (m.at("index").get<int>() != expect++) throw std::invalid_argument("members must be consecutive from the first index");
    members.push_back(multipoly_from_json(m.at("poly")));
  }
  return PolyFamily(parity, std::move(members), N);
}

json to_json(const RatPoly& p, Var v) {
  MultiPoly m;
  const MultiPoly x = MultiPoly::variable(v);
  for (int k = p.degree(); k >= 0; --k) m += MultiPoly(p.coeff(k)) * x.pow(static_cast<unsigned>(k));
  return to_json(m.with_vars(VarSet{v}));
}

}  // namespace qes
