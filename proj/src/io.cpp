#include "phsolve/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "phsolve/errors.hpp"

namespace phsolve {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionFailed("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Rational parse_rat(const ordered_json& v) {
  if (v.is_number_integer()) return Rational((long)v.get<std::int64_t>());
  if (v.is_string()) return rat_from_string(v.get<std::string>());
  throw PreconditionFailed("coefficients must be integers or \"p/q\" strings");
}

}  // namespace

SparseSystem parse_system_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw PreconditionFailed(std::string("bad JSON input: ") + e.what());
  }
  SparseSystem sys;
  if (!j.contains("n") || !j.contains("polynomials"))
    throw PreconditionFailed("input needs fields 'n' and 'polynomials'");
  sys.n = j["n"].get<int>();
  for (const auto& p : j["polynomials"]) {
    std::vector<Point> support;
    std::vector<Rational> coeffs;
    for (const auto& q : p["support"]) {
      Point pt;
      for (const auto& x : q) pt.push_back(x.get<std::int64_t>());
      if ((int)pt.size() != sys.n)
        throw PreconditionFailed("support point dimension mismatch");
      support.push_back(std::move(pt));
    }
    for (const auto& c : p["coefficients"]) coeffs.push_back(parse_rat(c));
    if (support.size() != coeffs.size())
      throw PreconditionFailed("support/coefficient count mismatch");
    sys.supports.push_back(std::move(support));
    sys.coeffs.push_back(std::move(coeffs));
  }
  if ((int)sys.supports.size() != sys.n)
    throw PreconditionFailed("expected exactly n polynomials");
  return sys;
}

SparseSystem read_system_json(const std::string& path) {
  return parse_system_json(slurp(path));
}

std::string report_to_json(const SolveReport& rep) {
  ordered_json j;
  {
    ordered_json u = ordered_json::array();
    for (const auto& c : rep.solution.u) u.push_back(rat_to_string(c));
    j["u"] = u;
  }
  {
    ordered_json m = ordered_json::array();
    for (int i = 0; i <= rep.solution.m.degree(); ++i)
      m.push_back(rat_to_string(rep.solution.m[i]));
    j["minimal_polynomial"] = m;
  }
  {
    ordered_json ws = ordered_json::array();
    for (const auto& w : rep.solution.w) {
      ordered_json wi = ordered_json::array();
      for (int i = 0; i <= w.degree(); ++i) wi.push_back(rat_to_string(w[i]));
      ws.push_back(wi);
    }
    j["parametrizations"] = ws;
  }
  j["D"] = (std::int64_t)rep.D.get_si();
  j["E"] = (std::int64_t)rep.E.get_si();
  j["E_prime"] = (std::int64_t)rep.Eprime.get_si();
  j["verified"] = rep.verified;
  {
    ordered_json r;
    for (const auto& [k, v] : rep.retries) r[k] = v;
    j["retries"] = r;
  }
  j["seed"] = rep.seed;
  return j.dump(2) + "\n";
}

GeometricSolution0D read_solution_json(const std::string& path) {
  ordered_json j;
  try {
    j = ordered_json::parse(slurp(path));
  } catch (const std::exception& e) {
    throw PreconditionFailed(std::string("bad JSON solution: ") + e.what());
  }
  GeometricSolution0D sol;
  for (const auto& c : j["u"]) sol.u.push_back(parse_rat(c));
  std::vector<Rational> mc;
  for (const auto& c : j["minimal_polynomial"]) mc.push_back(parse_rat(c));
  sol.m = PolyQ(std::move(mc));
  for (const auto& w : j["parametrizations"]) {
    std::vector<Rational> wc;
    for (const auto& c : w) wc.push_back(parse_rat(c));
    sol.w.emplace_back(std::move(wc));
  }
  return sol;
}

std::string subdivision_to_json(const SubdivisionChoice& sub) {
  ordered_json j;
  j["D"] = (std::int64_t)sub.D.get_si();
  j["E"] = (std::int64_t)sub.E.get_si();
  {
    ordered_json lifts = ordered_json::array();
    for (size_t l = 0; l < sub.lift.values.size(); ++l) {
      ordered_json lv = ordered_json::array();
      for (auto v : sub.lift.values[l]) lv.push_back(v);
      lifts.push_back(lv);
    }
    j["lifting"] = lifts;
  }
  ordered_json cells = ordered_json::array();
  for (const auto& c : sub.cells) {
    ordered_json jc;
    ordered_json pts = ordered_json::array();
    for (size_t l = 0; l < c.pts.size(); ++l)
      for (int idx : c.pts[l]) {
        ordered_json pt = ordered_json::array();
        for (auto x : sub.fam.classes[l][idx]) pt.push_back(x);
        pts.push_back(pt);
      }
    jc["points"] = pts;
    ordered_json g = ordered_json::array();
    for (const auto& x : c.gamma) g.push_back((std::int64_t)x.get_si());
    jc["gamma"] = g;
    jc["volume"] = rat_to_string(c.volume);
    jc["d_gamma"] = (std::int64_t)c.d_gamma.get_si();
    cells.push_back(jc);
  }
  j["cells"] = cells;
  return j.dump(2) + "\n";
}

}  // namespace phsolve
