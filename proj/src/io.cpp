#include "padd/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "padd/error.hpp"

namespace padd {
namespace {

void reject_unknown(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) throw ParseError("unknown key \"" + key + "\" in " + where);
  }
}

template <class T>
T field(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad value for \"") + key + "\": " + e.what());
  }
}

Vector numbers(const Json& j, const char* key) {
  const Json& a = j.at(key);
  if (!a.is_array()) throw ParseError(std::string("\"") + key + "\" must be an array");
  Vector out;
  for (const auto& e : a) {
    if (!e.is_number()) throw ParseError(std::string("\"") + key + "\" must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

void positive(double x, const char* name) {
  require(std::isfinite(x) && x > 0.0, std::string(name) + " must be positive");
}

RaySlopeOptions ray_from_json(const Json& j) {
  reject_unknown(j, {"grid_n", "eps_limit", "use_closed_form", "monotone_tol"}, "solver.ray");
  RaySlopeOptions r;
  r.grid_n = field<std::size_t>(j, "grid_n", r.grid_n);
  r.eps_limit = field<double>(j, "eps_limit", r.eps_limit);
  r.use_closed_form = field<bool>(j, "use_closed_form", r.use_closed_form);
  r.monotone_tol = field<double>(j, "monotone_tol", r.monotone_tol);
  require(r.grid_n >= 2, "solver.ray.grid_n must be >= 2");
  positive(r.eps_limit, "solver.ray.eps_limit");
  positive(r.monotone_tol, "solver.ray.monotone_tol");
  return r;
}

ResponseOptions response_from_json(const Json& j) {
  reject_unknown(j, {"tie_tol", "grid_per_dim", "ray_grid_n", "verify_tol", "gradient_cap", "max_verifications"},
                 "solver.response");
  ResponseOptions r;
  r.tie_tol = field<double>(j, "tie_tol", r.tie_tol);
  r.grid_per_dim = field<std::size_t>(j, "grid_per_dim", r.grid_per_dim);
  r.ray_grid_n = field<std::size_t>(j, "ray_grid_n", r.ray_grid_n);
  r.verify_tol = field<double>(j, "verify_tol", r.verify_tol);
  r.gradient_cap = field<double>(j, "gradient_cap", r.gradient_cap);
  r.max_verifications = field<std::size_t>(j, "max_verifications", r.max_verifications);
  positive(r.tie_tol, "solver.response.tie_tol");
  positive(r.verify_tol, "solver.response.verify_tol");
  positive(r.gradient_cap, "solver.response.gradient_cap");
  require(r.ray_grid_n >= 2, "solver.response.ray_grid_n must be >= 2");
  require(r.max_verifications >= 1, "solver.response.max_verifications must be >= 1");
  return r;
}

SolverConfig solver_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("\"solver\" must be an object");
  reject_unknown(j, {"grid_per_dim", "starts", "tie_tol", "backend", "lambda", "ray", "response"}, "solver");
  SolverConfig s;
  s.grid_per_dim = field<std::size_t>(j, "grid_per_dim", s.grid_per_dim);
  s.starts = field<std::size_t>(j, "starts", s.starts);
  s.tie_tol = field<double>(j, "tie_tol", s.tie_tol);
  const std::string backend = field<std::string>(j, "backend", "grid");
  if (backend == "grid") {
    s.backend = Backend::grid;
  } else if (backend == "vertices") {
    s.backend = Backend::vertices;
  } else {
    throw ParseError("unknown backend \"" + backend + "\"");
  }
  if (j.contains("lambda")) s.lambda = numbers(j, "lambda");
  if (j.contains("ray")) s.ray = ray_from_json(j.at("ray"));
  if (j.contains("response")) s.response = response_from_json(j.at("response"));
  positive(s.tie_tol, "solver.tie_tol");
  require(s.grid_per_dim == 0 || s.grid_per_dim >= 2, "solver.grid_per_dim must be 0 or >= 2");
  return s;
}

Json solver_to_json(const SolverConfig& s) {
  return Json{
      {"grid_per_dim", s.grid_per_dim},
      {"starts", s.starts},
      {"tie_tol", s.tie_tol},
      {"backend", s.backend == Backend::grid ? "grid" : "vertices"},
      {"lambda", s.lambda},
      {"ray",
       Json{{"grid_n", s.ray.grid_n},
            {"eps_limit", s.ray.eps_limit},
            {"use_closed_form", s.ray.use_closed_form},
            {"monotone_tol", s.ray.monotone_tol}}},
      {"response",
       Json{{"tie_tol", s.response.tie_tol},
            {"grid_per_dim", s.response.grid_per_dim},
            {"ray_grid_n", s.response.ray_grid_n},
            {"verify_tol", s.response.verify_tol},
            {"gradient_cap", s.response.gradient_cap},
            {"max_verifications", s.response.max_verifications}}},
  };
}

Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(what + ": " + e.what());
  }
}

std::string csv_join(std::span<const double> xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += fmt(xs[i]);
  }
  return out;
}

}  // namespace

ProblemConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  reject_unknown(j, {"value", "cost", "domain", "solver", "seed"}, "config");
  ProblemConfig cfg;
  try {
    cfg.value = function_from_json(j.at("value"));
    cfg.cost = function_from_json(j.at("cost"));
    const Json& dom = j.at("domain");
    if (!dom.is_object()) throw ParseError("\"domain\" must be an object");
    reject_unknown(dom, {"upper"}, "domain");
    cfg.domain = BoxDomain(numbers(dom, "upper"));
  } catch (const Json::out_of_range& e) {
    throw ParseError(std::string("missing field: ") + e.what());
  }
  if (j.contains("solver")) cfg.solver = solver_from_json(j.at("solver"));
  cfg.seed = field<std::uint64_t>(j, "seed", 0);
  require(cfg.value.dim() == cfg.domain.dim() && cfg.cost.dim() == cfg.domain.dim(),
          "value, cost and domain dimensions disagree");
  require(cfg.solver.lambda.empty() || cfg.solver.lambda.size() == cfg.domain.dim(),
          "solver.lambda dimension does not match the domain");
  return cfg;
}

Json to_json(const ProblemConfig& cfg) {
  return Json{
      {"value", to_json(cfg.value)},
      {"cost", to_json(cfg.cost)},
      {"domain", Json{{"upper", cfg.domain.uppers()}}},
      {"solver", solver_to_json(cfg.solver)},
      {"seed", cfg.seed},
  };
}

ProblemConfig read_config(const std::filesystem::path& path) {
  return config_from_json(parse_json_text(read_text_file(path), path.string()));
}

std::string dump_config(const ProblemConfig& cfg) { return to_json(cfg).dump(2) + "\n"; }

Json to_json(const EquilibriumOutcome& out) {
  Json j{
      {"method", std::string(to_string(out.method))},
      {"trade", out.trade()},
      {"bundle", out.bundle.vec()},
      {"total_payment", out.payment},
      {"price_split", out.price_split},
      {"unit_prices", out.unit_prices},
      {"buyer_surplus", out.buyer_surplus},
      {"seller_revenue", out.seller_revenue},
  };
  j["imitative_value"] = out.imitative ? to_json(out.imitative->as_function()) : Json(nullptr);
  return j;
}

EquilibriumOutcome outcome_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("outcome must be a JSON object");
  EquilibriumOutcome out;
  try {
    out.method = method_from_string(j.at("method").get<std::string>());
    out.bundle = Bundle(numbers(j, "bundle"));
    out.payment = j.at("total_payment").get<double>();
    out.price_split = numbers(j, "price_split");
    out.unit_prices = numbers(j, "unit_prices");
    out.buyer_surplus = j.at("buyer_surplus").get<double>();
    out.seller_revenue = j.at("seller_revenue").get<double>();
    // trade status follows the bundle; the imitation is implied by bundle and payment
    const bool trade = !out.bundle.is_zero();
    if (j.contains("trade") && j.at("trade").get<bool>() != trade)
      throw ParseError("outcome \"trade\" flag disagrees with the bundle");
    const Json& u = j.at("imitative_value");
    if (trade) {
      out.imitative.emplace(out.bundle, out.payment);
      if (!u.is_null()) {
        if (u.at("kind") != "leontief") throw ParseError("imitative_value must be a leontief expression");
        if (numbers(u, "anchor") != out.bundle.vec() || u.at("level").get<double>() != out.payment)
          throw ParseError("imitative_value disagrees with bundle and total_payment");
      }
    } else if (!u.is_null() || out.payment != 0.0) {
      throw ParseError("no-trade outcome must have zero payment and a null imitative_value");
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed outcome: ") + e.what());
  }
  if (out.unit_prices.size() != out.bundle.dim() || out.price_split.size() != out.bundle.dim())
    throw ParseError("outcome vectors disagree in dimension");
  return out;
}

std::string outcome_csv_header(std::size_t dim) {
  std::string h = "method";
  for (std::size_t i = 1; i <= dim; ++i) h += ",x" + std::to_string(i);
  h += ",total_payment";
  for (std::size_t i = 1; i <= dim; ++i) h += ",unit_price" + std::to_string(i);
  h += ",buyer_surplus,seller_revenue";
  return h;
}

std::string outcome_csv_row(const EquilibriumOutcome& out) {
  return std::string(to_string(out.method)) + "," + csv_join(out.bundle.coords()) + "," + fmt(out.payment) + "," +
         csv_join(out.unit_prices) + "," + fmt(out.buyer_surplus) + "," + fmt(out.seller_revenue);
}

Json to_json(const OverfitReport& r) {
  return Json{
      {"epsilon", r.epsilon},
      {"linear_bundle", r.linear_bundle.vec()},
      {"linear_payment", r.linear_payment},
      {"linear_revenue", r.linear_revenue},
      {"linear_buyer_surplus", r.linear_buyer_surplus},
      {"linear_response_revenue", r.linear_response_revenue},
      {"rich_bundle", r.rich_bundle.vec()},
      {"rich_payment", r.rich_payment},
      {"rich_revenue", r.rich_revenue},
      {"rich_revenue_numeric", r.rich_revenue_numeric},
      {"rich_buyer_surplus", r.rich_buyer_surplus},
      {"rich_equilibrium_u", to_json(r.rich_equilibrium_u)},
      {"chosen_price_tag", r.chosen_price_tag},
      {"buyer_choice", r.buyer_choice},
      {"strict_decrease", r.strict_decrease},
      {"note", r.note},
  };
}

std::string overfit_csv(const OverfitReport& r) {
  std::ostringstream os;
  os << "class,epsilon,bundle,payment,seller_revenue,buyer_surplus,chosen_price\n";
  os << "linear_only," << fmt(r.epsilon) << ',' << fmt(r.linear_bundle.coords()) << ',' << fmt(r.linear_payment)
     << ',' << fmt(r.linear_revenue) << ',' << fmt(r.linear_buyer_surplus) << ",linear\n";
  os << "linear_plus_extra," << fmt(r.epsilon) << ',' << fmt(r.rich_bundle.coords()) << ',' << fmt(r.rich_payment)
     << ',' << fmt(r.rich_revenue) << ',' << fmt(r.rich_buyer_surplus) << ',' << r.chosen_price_tag << '\n';
  return os.str();
}

std::string fmt(double x) {
  if (x == 0.0) x = 0.0;  // drops the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// vectors print as a single token, space separated inside brackets when d > 1
std::string fmt(std::span<const double> x) {
  if (x.size() == 1) return fmt(x[0]);
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ' ';
    out += fmt(x[i]);
  }
  return out + ")";
}

Vector parse_number_list(const std::string& text) {
  Vector out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ParseError("not a number: \"" + item + "\"");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw ParseError("not a number: \"" + item + "\"");
    out.push_back(value);
  }
  if (out.empty()) throw ParseError("empty number list");
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path.string());
  out << text;
  if (!out) throw ParseError("write failed for " + path.string());
}

}  // namespace padd
