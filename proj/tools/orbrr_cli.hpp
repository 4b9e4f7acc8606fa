#pragma once

// Command-line front end. Kept header-only so tests can drive run()
// in-process.
//
// Exit status: 0 success, 1 a mathematical check failed, 2 malformed input.

#include "orbrr/orbrr.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace orbrr::cli {

enum Exit : int { kOk = 0, kCheckFailed = 1, kBadInput = 2 };

struct Common {
  std::string format = "json";
  int series = 0;
};

namespace detail {

inline void add_series(Json& j, const RationalFn& f, int n) {
  if (n <= 0) return;
  SeriesWindow w = expand_laurent(f, n - 1);
  j["series"] = to_json(w);
}

inline void emit(std::ostream& out, const Common& c, const Json& j, const std::string& text) {
  if (c.format == "text") out << text;
  else out << j.dump(2) << "\n";
}

inline std::string series_text(const Json& j) {
  if (!j.contains("series")) return "";
  std::string s = "series (from t^" + std::to_string(j["series"]["start"].get<long>()) + "):";
  for (const auto& c : j["series"]["coeffs"]) s += " " + c.get<std::string>();
  return s + "\n";
}

/// Series of the input variety: numerator / prod (1 - t^w) if a numerator
/// is given, otherwise the complete intersection of the given degrees.
struct SeriesInput {
  std::string weights, degrees, numerator;
  std::optional<std::int64_t> k, n;

  void bind(CLI::App* sub, bool weights_required = true) {
    auto* w = sub->add_option("--weights", weights, "ambient weights a_0,...,a_N");
    if (weights_required) w->required();
    sub->add_option("--degrees", degrees, "equation degrees d_1,...");
    sub->add_option("--numerator", numerator, "Hilbert numerator over prod (1-t^a_i)");
    sub->add_option("--k", k, "canonical weight");
    sub->add_option("--n", n, "dimension");
  }

  CompleteIntersection resolve() const {
    auto w = parse_int_list(weights);
    if (w.empty()) throw InputError("--weights must be nonempty");
    CompleteIntersection ci;
    if (!numerator.empty()) {
      if (!degrees.empty()) throw InputError("give either --degrees or --numerator, not both");
      if (!k || !n) throw InputError("--numerator requires --k and --n");
      ci = {RationalFn(parse_poly(numerator), DenomSpec(w)), *k, *n};
    } else {
      try {
        ci = hilbert_ci(w, parse_int_list(degrees));
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      if (k) ci.k = *k;
      if (n) ci.n = *n;
    }
    return ci;
  }
};

inline std::vector<SurfacePoint> surface_points(const Basket& b, bool fano) {
  std::vector<SurfacePoint> out;
  for (const auto& e : b) {
    const auto& a = e.type.a();
    const std::int64_t r = e.type.r();
    bool ok = fano ? (a.size() == 3 && a[0] == 1 && a[1] + a[2] == r) : (a.size() == 2 && a[0] + a[1] == r);
    if (!ok)
      throw InputError("basket entry " + e.type.str() + (fano ? " is not of type 1/r(1,a,r-a)" : " is not of type 1/r(a,r-a)"));
    for (std::int64_t i = 0; i < e.multiplicity; ++i) out.push_back({r, fano ? a[1] : a[0]});
  }
  return out;
}

inline std::vector<std::pair<std::int64_t, std::int64_t>> curve_list(const Basket& b) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (const auto& e : b) {
    const auto& a = e.type.a();
    if (a.size() != 2 || a[0] + a[1] != e.type.r() || e.multiplicity != 1)
      throw InputError("curve " + e.type.str() + " must be a single transverse type 1/s(a,s-a)");
    out.emplace_back(e.type.r(), a[0]);
  }
  return out;
}

inline std::string decomposition_text(const Decomposition& d) {
  std::ostringstream os;
  os << "k = " << d.k << ", n = " << d.n << ", c = " << d.c << "\n";
  os << "initial: " << render(d.initial) << "\n";
  for (const auto& wp : d.orbifold_parts)
    os << wp.multiplicity << " x P_orb(" << wp.part.source.str() << "): " << render(wp.part.fn) << "\n";
  if (d.irregularity) os << "J: " << render(*d.irregularity) << "\n";
  for (const auto& w : d.warnings) os << "warning: " << w << "\n";
  os << "degree: " << degree_from_decomposition(d) << "\n";
  return os.str();
}

}  // namespace detail

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

namespace detail {

/// Turn one JobSpec payload into argv for run().
inline std::vector<std::string> job_argv(const Json& job) {
  if (!job.is_object() || !job.contains("command") || !job["command"].is_string())
    throw InputError("each job needs a string \"command\"");
  std::vector<std::string> argv{"orbrr", job["command"].get<std::string>()};
  if (argv[1] == "batch") throw InputError("batch jobs cannot nest");
  if (job.contains("output_format")) argv.insert(argv.end(), {"--format", job["output_format"].get<std::string>()});
  if (!job.contains("payload")) return argv;
  if (!job["payload"].is_object()) throw InputError("payload must be an object");
  for (const auto& [key, val] : job["payload"].items()) {
    const std::string flag = "--" + key;
    if (val.is_boolean()) {
      if (val.get<bool>()) argv.push_back(flag);
    } else if (val.is_array()) {
      std::string joined;
      for (const auto& x : val) joined += (joined.empty() ? "" : ",") + (x.is_string() ? x.get<std::string>() : x.dump());
      argv.insert(argv.end(), {flag, joined});
    } else {
      argv.insert(argv.end(), {flag, val.is_string() ? val.get<std::string>() : val.dump()});
    }
  }
  return argv;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hilbert series of polarized orbifolds in exact arithmetic", "orbrr"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--format", common.format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--series", common.series, "also print the first N series coefficients")->check(CLI::NonNegativeNumber);

  // hilbert
  auto* hil = app.add_subcommand("hilbert", "Hilbert series of a weighted complete intersection");
  detail::SeriesInput hil_in;
  hil_in.bind(hil);

  // parse
  auto* par = app.add_subcommand("parse", "split P = J + P_I + sum P_orb");
  detail::SeriesInput par_in;
  std::string par_basket, par_J;
  par_in.bind(par);
  par->add_option("--basket", par_basket, "e.g. 5x1/2(1,1,1);1/3(1,2,2)");
  par->add_option("--J", par_J, "irregularity polynomial");

  // porb
  auto* porb = app.add_subcommand("porb", "orbifold contribution of one point");
  std::int64_t porb_r = 0, porb_k = 0;
  std::string porb_a;
  bool porb_general = false;
  porb->add_option("--r", porb_r)->required();
  porb->add_option("--a", porb_a)->required();
  porb->add_option("--k", porb_k)->required();
  porb->add_flag("--general", porb_general, "generalized ice cream for non-isolated points");

  // dedekind
  auto* ded = app.add_subcommand("dedekind", "Dedekind sums sigma_i and Delta");
  std::int64_t ded_r = 0;
  std::string ded_a;
  ded->add_option("--r", ded_r)->required();
  ded->add_option("--a", ded_a)->required();

  // invmod
  auto* inv = app.add_subcommand("invmod", "inverse of A modulo F in a window");
  std::string inv_A, inv_F;
  std::int64_t inv_gamma = 0, inv_r = 0;
  inv->add_option("--A", inv_A)->required();
  inv->add_option("--F", inv_F)->required();
  inv->add_option("--gamma", inv_gamma)->required();
  inv->add_option("--r", inv_r, "period with t^r == 1 mod F")->required();

  // k3 / fano3
  auto* k3 = app.add_subcommand("k3", "polarized K3 surface from genus and basket");
  auto* fano = app.add_subcommand("fano3", "Q-Fano 3-fold from genus and basket");
  std::int64_t k3_g = 0, fano_g = 0;
  std::string k3_basket, fano_basket;
  k3->add_option("--g", k3_g)->required();
  k3->add_option("--basket", k3_basket, "types 1/r(a,r-a)");
  fano->add_option("--g", fano_g)->required();
  fano->add_option("--basket", fano_basket, "types 1/r(1,a,r-a)");

  // cy3
  auto* cy = app.add_subcommand("cy3", "Calabi-Yau 3-fold with curve orbifold locus");
  detail::SeriesInput cy_in;
  std::string cy_mode = "ice", cy_points, cy_curves, cy_dc, cy_iv;
  std::optional<std::string> cy_dc2, cy_d3;
  cy_in.bind(cy);
  cy->add_option("--mode", cy_mode)->check(CLI::IsMember({"ice", "rr"}));
  cy->add_option("--points", cy_points, "point basket");
  cy->add_option("--curves", cy_curves, "transverse types 1/s(a,s-a)");
  cy->add_option("--dc2", cy_dc2, "D.c2 (rr mode)");
  cy->add_option("--d3", cy_d3, "D^3 (rr mode)");
  cy->add_option("--dc", cy_dc, "D.C per curve (rr mode)");
  cy->add_option("--iv", cy_iv, "part IV prefactor per curve (rr mode)");

  // verify
  auto* ver = app.add_subcommand("verify", "run every check on a series and basket");
  detail::SeriesInput ver_in;
  std::string ver_basket, ver_J;
  ver_in.bind(ver);
  ver->add_option("--basket", ver_basket);
  ver->add_option("--J", ver_J);

  // batch
  auto* bat = app.add_subcommand("batch", "run a JSON file of jobs");
  std::string bat_file;
  bat->add_option("--file", bat_file)->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    Json j;
    std::string text;
    int status = kOk;

    if (hil->parsed()) {
      auto ci = hil_in.resolve();
      j = {{"series_fn", to_json(ci.series)}, {"text", render(ci.series)}, {"k", ci.k}, {"n", ci.n}};
      detail::add_series(j, ci.series, common.series);
      text = render(ci.series) + "\nk = " + std::to_string(ci.k) + ", n = " + std::to_string(ci.n) + "\n";
    } else if (par->parsed()) {
      auto ci = par_in.resolve();
      std::optional<LaurentPoly> J;
      if (!par_J.empty()) J = parse_poly(par_J);
      Decomposition d = parse_main(ci.series, ci.n, ci.k, parse_basket(par_basket), J);
      j = to_json(d);
      detail::add_series(j, ci.series, common.series);
      text = detail::decomposition_text(d);
    } else if (porb->parsed()) {
      OrbifoldType q;
      try {
        q = OrbifoldType(porb_r, parse_int_list(porb_a));
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      OrbifoldPart p = porb_general ? p_orb_general(q, porb_k, q.n()) : p_orb(q, porb_k, q.n());
      j = to_json(p);
      detail::add_series(j, p.fn, common.series);
      text = "P_orb(" + q.str() + ", " + std::to_string(porb_k) + ") = " + render(p.fn) + "\n";
    } else if (ded->parsed()) {
      OrbifoldType q;
      try {
        q = OrbifoldType(ded_r, parse_int_list(ded_a));
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      DeltaPoly D = delta(q);
      SigmaVector s = sigma_from_delta(D);
      j = to_json(s);
      j["type"] = q.str();
      j["delta"] = to_json(D.poly);
      j["delta_text"] = render(D.poly);
      detail::add_series(j, RationalFn(D.poly, DenomSpec{q.r()}), common.series);
      text = "Delta = " + render(D.poly) + "\nsigma =";
      for (const auto& v : s.values) text += " " + v.to_string();
      text += "\n";
    } else if (inv->parsed()) {
      LaurentPoly B = inv_mod(parse_poly(inv_A), parse_poly(inv_F), inv_gamma, inv_r);
      j = {{"B", to_json(B)}, {"text", render(B)}};
      detail::add_series(j, RationalFn(B), common.series);
      text = render(B) + "\n";
    } else if (k3->parsed() || fano->parsed()) {
      const bool is_fano = fano->parsed();
      auto pts = detail::surface_points(parse_basket(is_fano ? fano_basket : k3_basket), is_fano);
      ClosedFormResult res = is_fano ? fano3_series(fano_g, pts) : k3_series(k3_g, pts);
      j = {{"series_fn", to_json(res.series)},
           {"text", render(res.series)},
           {is_fano ? "minus_K_cubed" : "D_squared", to_json(res.degree)},
           {"P1", to_json(expand(res.series, 1).at(1))},
           {"decomposition", to_json(res.parsed)}};
      detail::add_series(j, res.series, common.series);
      text = render(res.series) + "\n" + (is_fano ? "-K^3 = " : "D^2 = ") + res.degree.to_string() + "\n" +
             detail::decomposition_text(res.parsed);
    } else if (cy->parsed()) {
      auto ci = cy_in.resolve();
      Basket pts = parse_basket(cy_points);
      auto curves = detail::curve_list(parse_basket(cy_curves));
      if (cy_mode == "ice") {
        CY3IceParts ice = cy3_ice_parts(ci.series, pts, curves);
        Json cps = Json::array();
        text = "P_I: " + render(ice.initial) + "\n";
        for (const auto& wp : ice.point_parts) text += std::to_string(wp.multiplicity) + " x P_orb(" + wp.part.source.str() + "): " + render(wp.part.fn) + "\n";
        for (const auto& c : ice.curve_parts) {
          cps.push_back({{"s", c.s}, {"a", c.a}, {"delta_C", c.delta_C.get_str()}, {"A_C", to_json(c.A)}, {"B_C", to_json(c.B)},
                         {"B_C_text", render(c.B)}});
          text += "curve 1/" + std::to_string(c.s) + "(" + std::to_string(c.a) + "," + std::to_string(c.s - c.a) +
                  "): delta_C = " + c.delta_C.get_str() + ", B_C = " + render(c.B) + "\n";
        }
        Json pps = Json::array();
        for (const auto& wp : ice.point_parts) {
          Json p = to_json(wp.part);
          p["multiplicity"] = wp.multiplicity;
          pps.push_back(std::move(p));
        }
        j = {{"mode", "ice"}, {"initial", to_json(ice.initial)}, {"initial_text", render(ice.initial)},
             {"point_parts", pps}, {"curve_parts", cps}, {"sum_matches", true}};
      } else {
        CY3Parts parts;
        Rational Dc2, D3;
        std::vector<CurveStratum> strata;
        const bool given = cy_dc2 || cy_d3 || !cy_dc.empty() || !cy_iv.empty();
        if (given) {
          if (!cy_dc2 || !cy_d3) throw InputError("rr mode needs both --dc2 and --d3, or neither");
          auto dc = parse_rational_list(cy_dc), iv = parse_rational_list(cy_iv);
          if (dc.size() != curves.size() || iv.size() != curves.size())
            throw InputError("--dc and --iv need one value per curve");
          Dc2 = Rational::parse(*cy_dc2);
          D3 = Rational::parse(*cy_d3);
          for (std::size_t i = 0; i < curves.size(); ++i) strata.push_back({curves[i].first, curves[i].second, dc[i], iv[i]});
          parts = cy3_rr_parts(Dc2, D3, pts, strata);
        } else {
          CY3RRFit fit = cy3_rr_fit(ci.series, pts, curves);
          Dc2 = fit.Dc2;
          D3 = fit.D3;
          strata = fit.curves;
          parts = fit.parts;
        }
        const bool ok = parts.total() == ci.series;
        Json cs = Json::array();
        for (std::size_t i = 0; i < strata.size(); ++i)
          cs.push_back({{"s", strata[i].s}, {"a", strata[i].a}, {"DC", to_json(strata[i].DC)},
                        {"iv_prefactor", to_json(strata[i].iv_prefactor)}, {"III", to_json(parts.III[i])},
                        {"III_text", render(parts.III[i])}, {"IV", to_json(parts.IV[i])}, {"IV_text", render(parts.IV[i])}});
        Json ii = Json::array();
        for (const auto& f : parts.II) ii.push_back(to_json(f));
        j = {{"mode", "rr"}, {"Dc2", to_json(Dc2)}, {"D3", to_json(D3)}, {"I", to_json(parts.I)}, {"I_text", render(parts.I)},
             {"II", ii}, {"curves", cs}, {"sum_matches", ok}};
        text = "I: " + render(parts.I) + "\n";
        for (const auto& f : parts.II) text += "II: " + render(f) + "\n";
        for (std::size_t i = 0; i < strata.size(); ++i)
          text += "III_" + std::to_string(strata[i].s) + ": " + render(parts.III[i]) + "\nIV_" + std::to_string(strata[i].s) + ": " + render(parts.IV[i]) + "\n";
        text += std::string("sum matches series: ") + (ok ? "yes" : "no") + "\n";
        if (!ok) status = kCheckFailed;
      }
      detail::add_series(j, ci.series, common.series);
    } else if (ver->parsed()) {
      auto ci = ver_in.resolve();
      std::optional<LaurentPoly> J;
      if (!ver_J.empty()) J = parse_poly(ver_J);
      VerifyReport rep = verify_series(ci.series, ci.k, ci.n, parse_basket(ver_basket), J);
      Json checks = Json::array();
      for (const auto& c : rep.checks) {
        checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
        text += std::string(c.ok ? "PASS " : "FAIL ") + c.name + (c.detail.empty() ? "" : ": " + c.detail) + "\n";
      }
      j = {{"ok", rep.ok()}, {"checks", checks}};
      if (rep.decomposition) j["decomposition"] = to_json(*rep.decomposition);
      detail::add_series(j, ci.series, common.series);
      if (!rep.ok()) status = kCheckFailed;
    } else if (bat->parsed()) {
      std::ifstream f(bat_file);
      if (!f) throw InputError("cannot open " + bat_file);
      Json jobs;
      try {
        jobs = Json::parse(f);
      } catch (const Json::parse_error& e) {
        throw InputError(std::string("bad JSON in ") + bat_file + ": " + e.what());
      }
      if (jobs.is_object() && jobs.contains("jobs")) jobs = jobs["jobs"];
      if (!jobs.is_array()) throw InputError("batch file must hold an array of jobs");
      j = Json::array();
      for (const auto& job : jobs) {
        std::ostringstream o, e;
        int code = run(detail::job_argv(job), o, e);
        Json res{{"command", job["command"]}, {"exit_code", code}};
        try {
          res["output"] = Json::parse(o.str());
        } catch (const Json::parse_error&) {
          res["output"] = o.str();
        }
        if (!e.str().empty()) res["stderr"] = e.str();
        text += job["command"].get<std::string>() + ": exit " + std::to_string(code) + "\n" + o.str();
        status = std::max(status, code);
        j.push_back(std::move(res));
      }
    }

    text += detail::series_text(j);
    detail::emit(out, common, j, text);
    return status;
  } catch (const CheckFailure& e) {
    if (common.format == "text") err << "check failed: " << e.what() << "\nresidual: " << render(e.residual) << "\n";
    else out << to_json(e).dump(2) << "\n";
    return kCheckFailed;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::domain_error& e) {
    if (common.format == "text") err << "check failed: " << e.what() << "\n";
    else out << Json{{"error", "check_failed"}, {"message", e.what()}}.dump(2) << "\n";
    return kCheckFailed;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kCheckFailed;
  }
}

}  // namespace orbrr::cli
