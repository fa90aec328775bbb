#include "regvar_cli/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "regvar/regvar.hpp"

namespace regvar::cli {

namespace {

using Policy = SampledFunction::OutOfRange;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr const char* kFunctionHelp =
    "Function arguments take a CSV path (header \"x,fx\") or a built-in name:\n"
    "  one, zero, identity, sqrt, square, exp, log, gauss, eta,\n"
    "  const:C, pow:A, kernel:KAPPA, goldie:GAMMA, fstar:GAMMA\n"
    "eta, kernel, goldie and fstar use --rho (and --sigma for kernel).";

// ---------------------------------------------------------------------------
// shared configuration

struct Config {
  std::string rho = "0";
  std::string sigma = "0";
  std::optional<double> tol;
  double truncation = 30.0;
  double x0 = 10.0;
  double ratio = 2.0;
  int max_steps = 40;
  int window = 3;
  bool strict = false;

  PopaParam rho_param() const { return parse_param(rho, "--rho"); }
  PopaParam sigma_param() const { return parse_param(sigma, "--sigma"); }

  double tolerance() const {
    if (tol) return *tol;
    if (const char* env = std::getenv("REGVAR_TOL")) {
      char* end = nullptr;
      const double v = std::strtod(env, &end);
      if (end == env || *end != '\0' || !(v > 0.0)) {
        throw UsageError(std::string("REGVAR_TOL must be a positive decimal, got '") + env + "'");
      }
      return v;
    }
    return 1e-6;
  }

  QuadratureSpec quadrature() const {
    QuadratureSpec q;
    q.truncation = truncation;
    q.validate();
    return q;
  }

  LimitScheme scheme() const {
    LimitScheme s;
    s.x0 = x0;
    s.ratio = ratio;
    s.max_steps = max_steps;
    s.stability_window = window;
    s.tol = tolerance();
    s.validate();
    return s;
  }

  static PopaParam parse_param(const std::string& text, const char* flag) {
    try {
      return PopaParam::parse(text);
    } catch (const std::exception& e) {
      throw UsageError(std::string(flag) + ": " + e.what());
    }
  }
};

struct GroupArgs {
  std::vector<double> ops;
};

struct TransformArgs {
  double lo = 0;
  double hi = 0;
  double gamma = 0;
  double u = 0;
  double x = 0;
  double z_re = 0;
  std::optional<double> z_im;
  std::optional<double> int_lo;
  std::optional<double> int_hi;
  std::vector<double> gammas;
  std::vector<double> support;
  std::string f_spec;
  std::string g_spec;
  std::string phi_spec;
};

struct KernelArgs {
  double kappa = 0;
  double gamma = 0;
  double u = 0;
  double v = 0;
  std::vector<double> ts;
  bool numeric = false;
};

struct EstimateArgs {
  std::string mode = "karamata";
  std::string f_spec;
  std::string phi_spec;
  std::string h_spec;
  std::string fit_rho;
  std::string fit_sigma;
  std::vector<double> ts;
  bool additive = false;
  double l1 = 0;
  double g1 = 0;
  double l2 = 0;
  double g2 = 0;
  double t_probe = 1.0;
};

struct BeckArgs {
  double delta = 0;
  double u = 0;
  double k_delta = 0;
  long i = 0;
  std::string g_spec = "one";
};

struct SubaddArgs {
  std::string s_spec;
  double lo = 0;
  double hi = 1;
  double kappa = 0;
  double a = 0;
  double b = 0;
  double delta = 0;
  double M = 0;
  int n = 101;
  int probes = 101;
  bool geometric = false;
  std::vector<double> ts;
};

struct CocycleArgs {
  std::string f_spec;
  std::string phi_spec;
  std::string h_spec;
  double s = 0;
  double t = 0;
  double x = 0;
};

struct Leaf {
  CLI::App* app;
  std::function<int()> action;
};

class Context {
 public:
  Context(std::ostream& out, std::ostream& err) : out(out), err(err) {}

  std::ostream& out;
  std::ostream& err;
  Config cfg;
  GroupArgs group;
  TransformArgs transform;
  KernelArgs kernel;
  EstimateArgs estimate;
  BeckArgs beck;
  SubaddArgs subadd;
  CocycleArgs cocycle;
  std::vector<Leaf> leaves;

  CLI::App* leaf(CLI::App* parent, const std::string& name, const std::string& desc, std::function<int()> action) {
    CLI::App* sub = parent->add_subcommand(name, desc);
    leaves.push_back({sub, std::move(action)});
    return sub;
  }

  int report_quadrature(bool converged, double error) const {
    if (converged) return kOk;
    err << "warning: quadrature did not converge (error estimate " << format_number(error) << ")\n";
    return cfg.strict ? kNotConverged : kOk;
  }
};

void add_rho(CLI::App* app, Config& cfg) { app->add_option("--rho", cfg.rho, "Popa parameter: 0, inf or a positive decimal"); }
void add_sigma(CLI::App* app, Config& cfg) {
  app->add_option("--sigma", cfg.sigma, "codomain Popa parameter: 0, inf or a positive decimal");
}
void add_tol(CLI::App* app, Config& cfg) {
  app->add_option("--tol", cfg.tol, "tolerance (default 1e-6, or REGVAR_TOL)");
}
void add_quadrature(CLI::App* app, Config& cfg) {
  app->add_option("--truncation", cfg.truncation, "additive-coordinate half-width for whole-group integrals")
      ->capture_default_str();
  app->add_flag("--strict", cfg.strict, "exit 3 when a numerical result did not converge");
}
void add_scheme(CLI::App* app, Config& cfg) {
  add_tol(app, cfg);
  app->add_option("--x0", cfg.x0, "first grid point")->capture_default_str();
  app->add_option("--ratio", cfg.ratio, "geometric grid ratio")->capture_default_str();
  app->add_option("--max-steps", cfg.max_steps, "grid length")->capture_default_str();
  app->add_option("--window", cfg.window, "stability window")->capture_default_str();
  app->add_flag("--strict", cfg.strict, "exit 3 when any limit did not converge");
}

double number_after(const std::string& spec, std::size_t colon) {
  const std::string tail = spec.substr(colon + 1);
  char* end = nullptr;
  const double v = std::strtod(tail.c_str(), &end);
  if (tail.empty() || *end != '\0' || !std::isfinite(v)) throw UsageError("bad number in function spec '" + spec + "'");
  return v;
}

std::vector<double> require_count(const std::vector<double>& v, std::size_t n, const char* op) {
  if (v.size() != n) {
    throw UsageError(std::string(op) + " takes " + std::to_string(n) + " operand" + (n == 1 ? "" : "s") + ", got " +
                     std::to_string(v.size()));
  }
  return v;
}

// ---------------------------------------------------------------------------
// group

void register_group(CLI::App& app, Context& ctx) {
  GroupArgs& g = ctx.group;
  CLI::App* group = app.add_subcommand("group", "Popa group arithmetic");
  group->require_subcommand(1);

  struct Op {
    const char* name;
    const char* desc;
    std::size_t arity;
    std::function<std::string(const PopaParam&, const std::vector<double>&)> fn;
  };
  const std::vector<Op> table = {
      {"circle", "x o y", 2, [](const PopaParam& p, const auto& v) { return format_number(circle(p, v[0], v[1])); }},
      {"inverse", "x^{-1}", 1, [](const PopaParam& p, const auto& v) { return format_number(inverse(p, v[0])); }},
      {"norm", "group norm of x", 1, [](const PopaParam& p, const auto& v) { return format_number(norm(p, v[0])); }},
      {"distance", "invariant distance of x and y", 2,
       [](const PopaParam& p, const auto& v) { return format_number(distance(PopaPoint(p, v[0]), PopaPoint(p, v[1]))); }},
      {"power", "delta^{n o}", 2,
       [](const PopaParam& p, const auto& v) {
         if (v[1] != std::floor(v[1]) || std::fabs(v[1]) > 1e15) throw UsageError("power: n must be an integer");
         return format_number(power(p, v[0], static_cast<long>(v[1])));
       }},
      {"leq", "x <= y in the group order", 2,
       [](const PopaParam& p, const auto& v) {
         return std::string(group_leq(PopaPoint(p, v[0]), PopaPoint(p, v[1])) ? "true" : "false");
       }},
      {"eta", "eta_rho(t)", 1, [](const PopaParam& p, const auto& v) { return format_number(eta(p, v[0])); }},
      {"to-mult", "isomorphism onto (R+, x)", 1,
       [](const PopaParam& p, const auto& v) { return format_number(to_multiplicative(PopaPoint(p, v[0]))); }},
      {"from-mult", "inverse of to-mult", 1,
       [](const PopaParam& p, const auto& v) { return format_number(from_multiplicative(p, v[0]).value()); }},
      {"to-add", "isomorphism onto (R, +)", 1,
       [](const PopaParam& p, const auto& v) { return format_number(to_additive(PopaPoint(p, v[0]))); }},
      {"from-add", "inverse of to-add", 1,
       [](const PopaParam& p, const auto& v) { return format_number(from_additive(p, v[0]).value()); }},
  };
  for (const Op& op : table) {
    CLI::App* sub = ctx.leaf(group, op.name, op.desc, [&ctx, &g, op] {
      const PopaParam p = ctx.cfg.rho_param();
      ctx.out << op.fn(p, require_count(g.ops, op.arity, op.name)) << '\n';
      return kOk;
    });
    add_rho(sub, ctx.cfg);
    sub->add_option("operands", g.ops, "operands; put -- before negative values")->required();
  }
}

// ---------------------------------------------------------------------------
// transform

SampledFunction group_function(const std::string& spec, const Config& cfg) {
  return resolve_function(spec, cfg.rho_param(), cfg.sigma_param(), Policy::Zero);
}

RealFn pulled_back_function(const std::string& spec, const Config& cfg) {
  const PopaParam p = cfg.rho_param();
  SampledFunction f = resolve_function(spec, p, cfg.sigma_param(), Policy::Zero);
  if (p.is_zero()) return f;
  return from_pullback(f, p);
}

void register_transform(CLI::App& app, Context& ctx) {
  TransformArgs& a = ctx.transform;
  CLI::App* tr = app.add_subcommand("transform", "Haar measure, integrals and transforms");
  tr->require_subcommand(1);

  CLI::App* haar = ctx.leaf(tr, "haar", "Haar measure of (lo, hi)", [&ctx, &a] {
    ctx.out << format_number(haar_interval_measure(Interval(ctx.cfg.rho_param(), a.lo, a.hi))) << '\n';
    return kOk;
  });
  add_rho(haar, ctx.cfg);
  haar->add_option("--lo", a.lo)->required();
  haar->add_option("--hi", a.hi)->required();

  CLI::App* integ = ctx.leaf(tr, "integrate", "Haar integral of f over (lo, hi) or the whole group", [&ctx, &a] {
    const PopaParam p = ctx.cfg.rho_param();
    const SampledFunction f = group_function(a.f_spec, ctx.cfg);
    const QuadratureSpec q = ctx.cfg.quadrature();
    if (a.int_lo.has_value() != a.int_hi.has_value()) throw UsageError("integrate: give both --lo and --hi, or neither");
    const QuadratureResult<double> r =
        a.int_lo ? haar_integrate(f, Interval(p, *a.int_lo, *a.int_hi), q) : haar_integrate_group(f, p, q);
    ctx.out << format_number(r.value) << '\n';
    return ctx.report_quadrature(r.converged, r.error);
  });
  add_rho(integ, ctx.cfg);
  add_sigma(integ, ctx.cfg);
  add_quadrature(integ, ctx.cfg);
  integ->add_option("--f", a.f_spec, "function on the group")->required();
  integ->add_option("--lo", a.int_lo);
  integ->add_option("--hi", a.int_hi);

  CLI::App* chr = ctx.leaf(tr, "character", "character gamma evaluated at u", [&ctx, &a] {
    const Complex c = character_eval(ctx.cfg.rho_param(), a.gamma, a.u);
    ctx.out << format_number(c.real()) << ',' << format_number(c.imag()) << '\n';
    return kOk;
  });
  add_rho(chr, ctx.cfg);
  chr->add_option("--gamma", a.gamma)->required();
  chr->add_option("--u", a.u)->required();

  CLI::App* four = ctx.leaf(tr, "fourier", "Fourier transform on the group", [&ctx, &a] {
    const PopaParam p = ctx.cfg.rho_param();
    const RealFn f = pulled_back_function(a.f_spec, ctx.cfg);
    const QuadratureSpec q = ctx.cfg.quadrature();
    int code = kOk;
    ctx.out << "gamma,re,im,converged\n";
    for (double gm : a.gammas) {
      const auto r = fourier_popa(f, p, gm, q);
      ctx.out << format_number(gm) << ',' << format_number(r.value.real()) << ',' << format_number(r.value.imag())
              << ',' << (r.converged ? "true" : "false") << '\n';
      if (!r.converged && ctx.cfg.strict) code = kNotConverged;
    }
    return code;
  });
  add_rho(four, ctx.cfg);
  add_quadrature(four, ctx.cfg);
  four->add_option("--f", a.f_spec, "pullback f_rho on (0, inf), or f on R when rho = 0")->required();
  four->add_option("--gamma", a.gammas, "frequencies")->required()->delimiter(',');

  CLI::App* mel = ctx.leaf(tr, "mellin", "Mellin transform on the group", [&ctx, &a] {
    const auto r = mellin_popa(pulled_back_function(a.f_spec, ctx.cfg), ctx.cfg.rho_param(),
                               Complex(a.z_re, a.z_im.value_or(0.0)),
                               ctx.cfg.quadrature());
    ctx.out << format_number(r.value.real());
    if (a.z_im) ctx.out << ',' << format_number(r.value.imag());
    ctx.out << '\n';
    return ctx.report_quadrature(r.converged, r.error);
  });
  add_rho(mel, ctx.cfg);
  add_quadrature(mel, ctx.cfg);
  mel->add_option("--f", a.f_spec, "pullback f_rho on (0, inf), or f on R when rho = 0")->required();
  mel->add_option("--z", a.z_re, "real part of z")->required();
  mel->add_option("--z-im", a.z_im, "imaginary part of z; when given, output is re,im");

  CLI::App* conv = ctx.leaf(tr, "convolve", "Haar convolution (f * g)(x)", [&ctx, &a] {
    const PopaParam p = ctx.cfg.rho_param();
    const auto r = popa_convolution(group_function(a.f_spec, ctx.cfg), group_function(a.g_spec, ctx.cfg),
                                    PopaPoint(p, a.x), ctx.cfg.quadrature());
    ctx.out << format_number(r.value) << '\n';
    return ctx.report_quadrature(r.converged, r.error);
  });
  add_rho(conv, ctx.cfg);
  add_quadrature(conv, ctx.cfg);
  conv->add_option("--f", a.f_spec)->required();
  conv->add_option("--g", a.g_spec)->required();
  conv->add_option("--x", a.x)->required();

  CLI::App* beur = ctx.leaf(tr, "beurling", "Beurling convolution (F *_phi H)(x)", [&ctx, &a] {
    std::optional<Support> sup;
    if (!a.support.empty()) {
      if (a.support.size() != 2 || !(a.support[0] < a.support[1])) throw UsageError("--support takes lo,hi with lo < hi");
      sup = Support{a.support[0], a.support[1]};
    }
    const PopaParam zero = PopaParam::zero();
    const auto r = beurling_convolution(resolve_function(a.f_spec, zero, zero, Policy::Zero),
                                        resolve_function(a.g_spec, zero, zero, Policy::Throw),
                                        resolve_function(a.phi_spec, zero, zero, Policy::Throw), a.x,
                                        ctx.cfg.quadrature(), sup);
    ctx.out << format_number(r.value) << '\n';
    return ctx.report_quadrature(r.converged, r.error);
  });
  add_quadrature(beur, ctx.cfg);
  beur->add_option("--F", a.f_spec, "integrable kernel F")->required();
  beur->add_option("--H", a.g_spec, "bounded function H")->required();
  beur->add_option("--phi", a.phi_spec, "self-neglecting scale phi")->required();
  beur->add_option("--x", a.x)->required();
  beur->add_option("--support", a.support, "lo,hi outside which F vanishes")->delimiter(',');
}

// ---------------------------------------------------------------------------
// kernel

void register_kernel(CLI::App& app, Context& ctx) {
  KernelArgs& a = ctx.kernel;
  CLI::App* kn = app.add_subcommand("kernel", "additive kernels K_kappa and the Goldie auxiliaries");
  kn->require_subcommand(1);

  const auto params = [&ctx, &a] { return KernelParams{ctx.cfg.rho_param(), ctx.cfg.sigma_param(), a.kappa}; };

  CLI::App* ev = ctx.leaf(kn, "eval", "K_kappa(t)", [&ctx, &a, params] {
    const KernelParams kp = params();
    for (double t : a.ts) ctx.out << format_number(kernel_eval(kp, t)) << '\n';
    return kOk;
  });
  CLI::App* inv = ctx.leaf(kn, "inverse", "K_kappa^{-1}(z)", [&ctx, &a, params] {
    const KernelParams kp = params();
    for (double z : a.ts) ctx.out << format_number(kernel_inverse(kp, z)) << '\n';
    return kOk;
  });
  for (CLI::App* sub : {ev, inv}) {
    add_rho(sub, ctx.cfg);
    add_sigma(sub, ctx.cfg);
    sub->add_option("--kappa", a.kappa)->required();
  }
  ev->add_option("--t", a.ts, "arguments")->required()->delimiter(',');
  inv->add_option("--z", a.ts, "values")->required()->delimiter(',');

  CLI::App* gG = ctx.leaf(kn, "goldie-G", "G(u) for g(t) = (1 + rho t)^{-gamma}", [&ctx, &a] {
    const GoldieAux aux(ctx.cfg.rho_param(), a.gamma);
    if (!a.numeric) {
      ctx.out << format_number(goldie_G(aux, a.u)) << '\n';
      return kOk;
    }
    const auto r = goldie_G_numeric(aux, a.u, ctx.cfg.quadrature());
    ctx.out << format_number(r.value) << '\n';
    return ctx.report_quadrature(r.converged, r.error);
  });
  add_rho(gG, ctx.cfg);
  add_quadrature(gG, ctx.cfg);
  gG->add_option("--gamma", a.gamma)->required();
  gG->add_option("--u", a.u)->required();
  gG->add_flag("--numeric", a.numeric, "integrate instead of using the closed form");

  CLI::App* res = ctx.leaf(kn, "residuals", "functional-equation residuals of K_kappa at (u, v)", [&ctx, &a, params] {
    const KernelParams kp = params();
    if (kp.sigma.is_infinity()) throw UsageError("residuals need sigma = 0 or finite sigma");
    const RealFn K = [kp](double t) { return kernel_eval(kp, t); };
    const RealFn g = [kp](double t) { return raw::eta(kp.sigma, kernel_eval(kp, t)); };
    ctx.out << "bg=" << format_number(bg_residual(K, g, kp.rho, a.u, a.v)) << '\n';
    ctx.out << "cj=" << format_number(cj_residual(g, kp.rho, a.u, a.v)) << '\n';
    return kOk;
  });
  add_rho(res, ctx.cfg);
  add_sigma(res, ctx.cfg);
  res->add_option("--kappa", a.kappa)->required();
  res->add_option("--u", a.u)->required();
  res->add_option("--v", a.v)->required();
}

// ---------------------------------------------------------------------------
// estimate

KernelMode parse_mode(const std::string& s) {
  if (s == "karamata") return KernelMode::Karamata;
  if (s == "bkdh") return KernelMode::BKdH;
  if (s == "beurling") return KernelMode::Beurling;
  if (s == "general") return KernelMode::General;
  throw UsageError("unknown mode '" + s + "' (karamata, bkdh, beurling, general)");
}

void register_estimate(CLI::App& app, Context& ctx) {
  EstimateArgs& a = ctx.estimate;
  CLI::App* es = app.add_subcommand("estimate", "kernel and index estimation");
  es->require_subcommand(1);

  CLI::App* kern = ctx.leaf(es, "kernel", "estimate K(t) = lim of the chosen operator", [&ctx, &a] {
    const KernelMode m = parse_mode(a.mode);
    const bool needs_phi = m == KernelMode::Beurling || m == KernelMode::General;
    const bool needs_h = m == KernelMode::BKdH || m == KernelMode::General;
    if (needs_phi && a.phi_spec.empty()) throw UsageError("mode " + a.mode + " needs --phi");
    if (needs_h && a.h_spec.empty()) throw UsageError("mode " + a.mode + " needs --h");
    const PopaParam zero = PopaParam::zero();
    const SampledFunction one = SampledFunction::constant(1.0);
    const SampledFunction f = resolve_function(a.f_spec, zero, zero, Policy::Throw);
    const SampledFunction phi = needs_phi ? resolve_function(a.phi_spec, zero, zero, Policy::Throw) : one;
    const SampledFunction h = needs_h ? resolve_function(a.h_spec, zero, zero, Policy::Throw) : one;
    const LimitScheme scheme = ctx.cfg.scheme();
    const auto points = estimate_kernel(KernelRequest{m, a.additive}, f, phi, h, a.ts, scheme);

    std::optional<double> rho_hat;
    if (needs_phi) rho_hat = estimate_eta_rho(phi, 1.0, scheme).value;
    PopaParam rho = a.additive ? PopaParam::zero() : PopaParam::infinity();
    if (rho_hat) rho = param_from_estimate(std::max(0.0, *rho_hat), scheme.tol);
    if (!a.fit_rho.empty()) rho = Config::parse_param(a.fit_rho, "--fit-rho");
    PopaParam sigma = (m == KernelMode::Karamata || m == KernelMode::Beurling) ? PopaParam::infinity() : zero;
    if (!a.fit_sigma.empty()) sigma = Config::parse_param(a.fit_sigma, "--fit-sigma");

    int code = kOk;
    std::vector<std::pair<double, double>> samples;
    ctx.out << "t,K,converged\n";
    for (const KernelPoint& kp : points) {
      ctx.out << format_number(kp.t) << ',' << format_number(kp.estimate.value) << ','
              << (kp.estimate.converged ? "true" : "false") << '\n';
      if (!kp.in_domain) {
        ctx.err << "warning: t = " << format_number(kp.t) << " is outside the estimated domain\n";
        continue;
      }
      if (!kp.estimate.converged && ctx.cfg.strict) code = kNotConverged;
      if (rho.contains(kp.t) && sigma.contains(kp.estimate.value) && std::isfinite(kp.estimate.value)) {
        samples.emplace_back(kp.t, kp.estimate.value);
      }
    }
    try {
      const KappaFit fit = fit_kappa(samples, rho, sigma);
      ctx.err << "kappa=" << format_number(fit.kappa) << " rms=" << format_number(fit.rms_residual);
    } catch (const DomainError&) {
      ctx.err << "kappa=nan rms=nan";
    }
    ctx.err << " fit_rho=" << rho.to_string() << " fit_sigma=" << sigma.to_string();
    if (rho_hat) ctx.err << " rho_hat=" << format_number(*rho_hat);
    ctx.err << '\n';
    return code;
  });
  add_scheme(kern, ctx.cfg);
  kern->add_option("--mode", a.mode, "karamata, bkdh, beurling or general")->capture_default_str();
  kern->add_option("--f", a.f_spec, "sampled function f")->required();
  kern->add_option("--phi", a.phi_spec, "scale function phi (beurling, general)");
  kern->set_help_flag("--help", "Print this help message and exit");
  kern->add_option("--h", a.h_spec, "auxiliary function h (bkdh, general)");
  kern->add_option("--t", a.ts, "lambda (multiplicative) or t values")->required()->delimiter(',');
  kern->add_flag("--additive", a.additive, "karamata/bkdh: t is an additive shift");
  kern->add_option("--fit-rho", a.fit_rho, "domain parameter for the kappa fit");
  kern->add_option("--fit-sigma", a.fit_sigma, "codomain parameter for the kappa fit");

  CLI::App* two = ctx.leaf(es, "two-point", "index from g(l1), g(l2)", [&ctx, &a] {
    const TwoPointIndex r = two_point_index(a.l1, a.g1, a.l2, a.g2, ctx.cfg.tolerance());
    ctx.out << "rho=" << format_number(r.rho) << (r.consistent ? " consistent" : " inconsistent");
    if (!r.consistent) ctx.out << " rho1=" << format_number(r.rho1) << " rho2=" << format_number(r.rho2);
    ctx.out << '\n';
    if (r.rational_ratio) {
      ctx.err << "warning: log(l1)/log(l2) = " << r.p << '/' << r.q << " is rational\n";
    }
    return kOk;
  });
  add_tol(two, ctx.cfg);
  two->add_option("--l1", a.l1)->required();
  two->add_option("--g1", a.g1)->required();
  two->add_option("--l2", a.l2)->required();
  two->add_option("--g2", a.g2)->required();

  CLI::App* et = ctx.leaf(es, "eta", "index rho of eta_x(t) = phi(x + t phi(x))/phi(x)", [&ctx, &a] {
    const PopaParam zero = PopaParam::zero();
    const auto r = estimate_eta_rho(resolve_function(a.phi_spec, zero, zero, Policy::Throw), a.t_probe, ctx.cfg.scheme());
    ctx.out << "rho_hat=" << format_number(r.value) << '\n';
    ctx.out << "converged=" << (r.converged ? "true" : "false") << '\n';
    return !r.converged && ctx.cfg.strict ? kNotConverged : kOk;
  });
  add_scheme(et, ctx.cfg);
  et->add_option("--phi", a.phi_spec)->required();
  et->add_option("--t", a.t_probe, "probe point")->capture_default_str();
}

// ---------------------------------------------------------------------------
// beck

void register_beck(CLI::App& app, Context& ctx) {
  BeckArgs& a = ctx.beck;
  CLI::App* bk = app.add_subcommand("beck", "Beck sequences and sums");
  bk->require_subcommand(1);

  CLI::App* part = ctx.leaf(bk, "partition", "Beck points up to the first one above u", [&ctx, &a] {
    for (double p : beck_partition(ctx.cfg.rho_param(), a.delta, a.u)) ctx.out << format_number(p) << '\n';
    return kOk;
  });
  CLI::App* sum = ctx.leaf(bk, "sum", "Beck Riemann sum of g/eta over [0, u]", [&ctx, &a] {
    const PopaParam p = ctx.cfg.rho_param();
    ctx.out << format_number(beck_riemann_sum(resolve_function(a.g_spec, p, p, Policy::Throw), p, a.delta, a.u)) << '\n';
    return kOk;
  });
  for (CLI::App* sub : {part, sum}) {
    add_rho(sub, ctx.cfg);
    sub->add_option("--delta", a.delta)->required();
    sub->add_option("--u", a.u)->required();
  }
  sum->add_option("--g", a.g_spec, "integrand")->capture_default_str();

  CLI::App* gs = ctx.leaf(bk, "goldie", "K_delta * sum of g over the first i Beck points", [&ctx, &a] {
    const PopaParam p = ctx.cfg.rho_param();
    ctx.out << format_number(goldie_sum(a.k_delta, resolve_function(a.g_spec, p, p, Policy::Throw), p, a.delta, a.i)) << '\n';
    return kOk;
  });
  add_rho(gs, ctx.cfg);
  gs->add_option("--delta", a.delta)->required();
  gs->add_option("--i", a.i)->required();
  gs->add_option("--K", a.k_delta, "K(delta)")->required();
  gs->add_option("--g", a.g_spec, "auxiliary function")->capture_default_str();
}

// ---------------------------------------------------------------------------
// subadd

void print_report(std::ostream& out, const SubaddReport& r) {
  out << "holds=" << (r.holds ? "true" : "false") << '\n'
      << "worst_violation=" << format_number(r.worst_violation) << '\n'
      << "worst_pair=" << format_number(r.worst_pair.first) << ',' << format_number(r.worst_pair.second) << '\n'
      << "pairs_checked=" << r.pairs_checked << '\n'
      << "pairs_skipped=" << r.pairs_skipped << '\n';
}

void register_subadd(CLI::App& app, Context& ctx) {
  SubaddArgs& sargs = ctx.subadd;
  CLI::App* sa = app.add_subcommand("subadd", "subadditivity and related bounds");
  sa->require_subcommand(1);

  const auto S = [&ctx, &sargs] { return resolve_function(sargs.s_spec, ctx.cfg.rho_param(), ctx.cfg.sigma_param(), Policy::Throw); };

  CLI::App* chk = ctx.leaf(sa, "check", "S(x o y) <= S(x) o S(y) on a grid", [&ctx, &sargs, S] {
    GridSpec g{sargs.lo, sargs.hi, sargs.n, sargs.geometric ? GridSpec::Spacing::Geometric : GridSpec::Spacing::Linear};
    try {
      g.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    print_report(ctx.out, subadditivity_check(S(), ctx.cfg.rho_param(), ctx.cfg.sigma_param(), g, ctx.cfg.tolerance()));
    return kOk;
  });
  chk->add_option("--lo", sargs.lo)->required();
  chk->add_option("--hi", sargs.hi)->required();
  chk->add_option("--n", sargs.n, "grid size")->capture_default_str();
  chk->add_flag("--geometric", sargs.geometric, "geometric instead of linear spacing");

  CLI::App* bnd = ctx.leaf(sa, "bounded", "S(t) <= K_kappa(t) on the given points", [&ctx, &sargs, S] {
    const KernelParams kp{ctx.cfg.rho_param(), ctx.cfg.sigma_param(), sargs.kappa};
    print_report(ctx.out, additively_bounded_check(S(), kp, sargs.ts, ctx.cfg.tolerance()));
    return kOk;
  });
  bnd->add_option("--kappa", sargs.kappa)->required();
  bnd->add_option("--t", sargs.ts, "sample points")->required()->delimiter(',');

  CLI::App* hs = ctx.leaf(sa, "hs", "limsup of S along a sequence decreasing to 0", [&ctx, &sargs, S] {
    const std::vector<double> seq = sargs.ts.empty() ? default_hs_sequence() : sargs.ts;
    HsProbe r;
    try {
      r = heiberg_seneta_probe(S(), seq, ctx.cfg.tolerance());
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    ctx.out << "limsup=" << format_number(r.limsup_estimate) << '\n'
            << "passes=" << (r.passes ? "true" : "false") << '\n';
    return kOk;
  });
  hs->add_option("--seq", sargs.ts, "sequence (default 2^-n, n = 1..40)")->delimiter(',');

  CLI::App* p5 = ctx.leaf(sa, "prop5", "bound propagation from B_delta(a) to B_delta(b)", [&ctx, &sargs, S] {
    const SandwichReport r = prop5_sandwich_check(S(), ctx.cfg.rho_param(), ctx.cfg.sigma_param(), sargs.a, sargs.b, sargs.delta, sargs.M,
                                               sargs.probes, ctx.cfg.tolerance());
    ctx.out << "holds=" << (r.holds ? "true" : "false") << '\n'
            << "premise_ok=" << (r.premise_ok ? "true" : "false") << '\n'
            << "worst_violation=" << format_number(r.worst_violation) << '\n'
            << "worst_x=" << format_number(r.worst_x) << '\n';
    return kOk;
  });
  p5->add_option("--a", sargs.a)->required();
  p5->add_option("--b", sargs.b)->required();
  p5->add_option("--delta", sargs.delta)->required();
  p5->add_option("--M", sargs.M)->required();
  p5->add_option("--probes", sargs.probes)->capture_default_str();

  for (CLI::App* sub : {chk, bnd, hs, p5}) {
    add_rho(sub, ctx.cfg);
    add_sigma(sub, ctx.cfg);
    add_tol(sub, ctx.cfg);
    sub->add_option("--S", sargs.s_spec, "function under test")->required();
  }
}

// ---------------------------------------------------------------------------
// cocycle

void register_cocycle(CLI::App& app, Context& ctx) {
  CocycleArgs& a = ctx.cocycle;
  CLI::App* cc = app.add_subcommand("cocycle", "pre-limit cocycle residuals");
  cc->require_subcommand(1);

  const auto fn = [](const std::string& spec) {
    const PopaParam zero = PopaParam::zero();
    return resolve_function(spec, zero, zero, Policy::Throw);
  };
  CLI::App* kar = ctx.leaf(cc, "karamata", "K(st,x) - K(s,xt) K(t,x)", [&ctx, &a, fn] {
    ctx.out << format_number(cocycle_residual_karamata(fn(a.f_spec), a.s, a.t, a.x)) << '\n';
    return kOk;
  });
  CLI::App* beu = ctx.leaf(cc, "beurling", "Beurling ratio cocycle residual", [&ctx, &a, fn] {
    ctx.out << format_number(cocycle_residual_beurling(fn(a.f_spec), fn(a.phi_spec), a.s, a.t, a.x)) << '\n';
    return kOk;
  });
  CLI::App* gen = ctx.leaf(cc, "general", "general difference cocycle residual", [&ctx, &a, fn] {
    ctx.out << format_number(cocycle_residual_general(fn(a.f_spec), fn(a.phi_spec), fn(a.h_spec), a.s, a.t, a.x)) << '\n';
    return kOk;
  });
  for (CLI::App* sub : {kar, beu, gen}) {
    sub->add_option("--f", a.f_spec)->required();
    sub->add_option("--s", a.s)->required();
    sub->add_option("--t", a.t)->required();
    sub->add_option("--x", a.x)->required();
  }
  for (CLI::App* sub : {beu, gen}) sub->add_option("--phi", a.phi_spec)->required();
  gen->set_help_flag("--help", "Print this help message and exit");
  gen->add_option("--h", a.h_spec)->required();
}

}  // namespace

// ---------------------------------------------------------------------------

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

SampledFunction resolve_function(const std::string& spec, const PopaParam& rho, const PopaParam& sigma,
                                 Policy policy) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const bool has_arg = colon != std::string::npos;
  if (!has_arg) {
    if (name == "one") return SampledFunction::constant(1.0);
    if (name == "zero") return SampledFunction::constant(0.0);
    if (name == "identity") return [](double x) { return x; };
    if (name == "sqrt") return [](double x) { return std::sqrt(x); };
    if (name == "square") return [](double x) { return x * x; };
    if (name == "exp") return [](double x) { return std::exp(x); };
    if (name == "log") return [](double x) { return std::log(x); };
    if (name == "gauss") return [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); };
    if (name == "eta") return [rho](double x) { return eta(rho, x); };
  } else {
    const double a = number_after(spec, colon);
    if (name == "const") return SampledFunction::constant(a);
    if (name == "pow") return [a](double x) { return std::pow(x, a); };
    if (name == "kernel") {
      const KernelParams kp{rho, sigma, a};
      return [kp](double x) { return kernel_eval(kp, x); };
    }
    if (name == "goldie") {
      const GoldieAux aux(rho, a);
      return [aux](double x) { return goldie_g(aux, x); };
    }
    if (name == "fstar") {
      const GoldieAux aux(rho, a);
      return [aux](double x) { return aux.rho.rho() * goldie_G(aux, x); };
    }
  }
  std::error_code ec;
  if (!std::filesystem::is_regular_file(spec, ec)) {
    throw UsageError("'" + spec + "' is neither a built-in function nor a readable file");
  }
  return SampledFunction(read_function_csv(spec), policy);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx(out, err);
  CLI::App app{"Numerics for Popa groups and general regular variation", "regvar"};
  app.require_subcommand(1);
  app.footer(kFunctionHelp);
  register_group(app, ctx);
  register_transform(app, ctx);
  register_kernel(app, ctx);
  register_estimate(app, ctx);
  register_beck(app, ctx);
  register_subadd(app, ctx);
  register_cocycle(app, ctx);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  for (const Leaf& l : ctx.leaves) {
    if (!l.app->parsed()) continue;
    try {
      return l.action();
    } catch (const UsageError& e) {
      err << "error: " << e.what() << '\n';
      return kUsage;
    } catch (const regvar::ParseError& e) {
      err << "error: " << e.what() << '\n';
      return kDataError;
    } catch (const DomainError& e) {
      err << "error: " << e.what() << '\n';
      return kDataError;
    } catch (const RangeError& e) {
      err << "error: " << e.what() << '\n';
      return kDataError;
    } catch (const ParamMismatch& e) {
      err << "error: " << e.what() << '\n';
      return kDataError;
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << '\n';
      return kUsage;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kDataError;
    }
  }
  err << "error: no command given\n";
  return kUsage;
}

}  // namespace regvar::cli
