#include "ywq/series_io.hpp"

#include <sstream>

namespace ywq {

namespace {

std::string monomial_str(const VarSet& vars, const ExpVec& e) {
  std::ostringstream os;
  bool any = false;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (any) os << " ";
    any = true;
    os << vars.names[i];
    if (e[i] != 1) os << "^" << e[i];
  }
  return os.str();
}

// One term as (negative?, body). Bodies look like "5*q^2", "q0 q1", "3".
struct TermText {
  bool negative;
  std::string body;
};

TermText term_text(const VarSet& vars, const ExpVec& e, Int c) {
  std::string mon = monomial_str(vars, e);
  bool neg = c < 0;
  Int a = neg ? -c : c;
  std::ostringstream os;
  if (mon.empty()) {
    os << a;
  } else if (a == 1) {
    os << mon;
  } else {
    os << a << "*" << mon;
  }
  return {neg, os.str()};
}

TermText term_text(const VarSet& vars, const ExpVec& e, const CycInt& c) {
  if (c.is_integer()) return term_text(vars, e, c.integer_value());
  std::string mon = monomial_str(vars, e);
  std::ostringstream os;
  os << "(" << c.to_string() << ")";
  if (!mon.empty()) os << "*" << mon;
  return {false, os.str()};
}

template <class C>
std::string render(const Series<C>& s) {
  if (s.terms().empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : s.terms()) {
    TermText t = term_text(s.vars(), e, c);
    if (first) {
      if (t.negative) os << "-";
      first = false;
    } else {
      os << (t.negative ? " - " : " + ");
    }
    os << t.body;
  }
  return os.str();
}

nlohmann::json varset_json(const VarSet& v, int trunc) {
  nlohmann::json j;
  j["variables"] = v.names;
  j["weights"] = v.weights;
  if (v.laurent >= 0) j["laurent"] = v.laurent;
  j["truncation"] = trunc;
  return j;
}

VarSetPtr varset_from_json(const nlohmann::json& j) {
  std::vector<std::string> names = j.at("variables").get<std::vector<std::string>>();
  std::vector<int> weights = j.contains("weights")
                                 ? j.at("weights").get<std::vector<int>>()
                                 : std::vector<int>(names.size(), 1);
  int laurent = j.contains("laurent") ? j.at("laurent").get<int>() : -1;
  return make_vars(std::move(names), std::move(weights), laurent);
}

}  // namespace

std::string to_text(const ZSeries& s) { return render(s); }
std::string to_text(const CSeries& s) { return render(s); }

nlohmann::json to_json(const ZSeries& s) {
  nlohmann::json j = varset_json(s.vars(), s.trunc());
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : s.terms()) terms.push_back({{"exp", e}, {"coeff", c}});
  j["terms"] = std::move(terms);
  return j;
}

nlohmann::json to_json(const CSeries& s) {
  nlohmann::json j = varset_json(s.vars(), s.trunc());
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : s.terms())
    terms.push_back({{"exp", e}, {"coeff", {{"order", c.order()}, {"coeffs", c.coords()}}}});
  j["terms"] = std::move(terms);
  return j;
}

ZSeries zseries_from_json(const nlohmann::json& j) {
  ZSeries s(varset_from_json(j), j.at("truncation").get<int>());
  for (const auto& t : j.at("terms"))
    s.add_term(t.at("exp").get<ExpVec>(), t.at("coeff").get<Int>());
  return s;
}

CSeries cseries_from_json(const nlohmann::json& j) {
  CSeries s(varset_from_json(j), j.at("truncation").get<int>());
  for (const auto& t : j.at("terms")) {
    const auto& cj = t.at("coeff");
    int order = cj.at("order").get<int>();
    std::vector<Int> coords = cj.at("coeffs").get<std::vector<Int>>();
    CycInt acc = CycInt::zero(order);
    for (size_t i = 0; i < coords.size(); ++i)
      acc += CycInt::zeta_pow(order, static_cast<long long>(i)) * coords[i];
    s.add_term(t.at("exp").get<ExpVec>(), acc);
  }
  return s;
}

}  // namespace ywq
