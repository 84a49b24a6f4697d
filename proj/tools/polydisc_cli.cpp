// Command-line front-end for the polydisc library: expression-defined
// functions wired to boundary sampling, derivatives, curve integrals,
// holomorphy diagnostics, Liouville classification, removable-singularity
// extension, polynomial approximation and identity certification.
//
// Complex tuples on the command line: coordinates separated by ';', each
// coordinate "re,im" or a bare real ("0.2,0;0.1,0"). When the string has no
// ';' and exactly d comma-separated bare reals, they are read as d real
// coordinates ("--center 0,0"); with d = 1, "a,b" is read as a+bi.
//
// Exit codes: 0 success (diagnostic fail verdicts are still successes),
// 2 domain/validation errors, 3 resource errors, 64 usage errors.

#include <CLI11.hpp>

#include <polydisc/analysis.hpp>
#include <polydisc/json_io.hpp>
#include <polydisc/liouville.hpp>

#include <fstream>
#include <iostream>

using namespace polydisc;
using expr::Expr;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_real(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DomainError("could not parse real number '" + s + "'");
  }
}

CPoint parse_point(const std::string& text, std::size_t d) {
  std::vector<Complex> coords;
  if (text.find(';') != std::string::npos) {
    for (const auto& part : split(text, ';')) {
      const auto pair = split(part, ',');
      if (pair.size() == 1)
        coords.push_back(Complex{parse_real(pair[0]), 0.0});
      else if (pair.size() == 2)
        coords.push_back(Complex{parse_real(pair[0]), parse_real(pair[1])});
      else
        throw DomainError("coordinate '" + part + "' must be 're' or 're,im'");
    }
  } else {
    const auto parts = split(text, ',');
    if (parts.size() == d) {
      for (const auto& p : parts) coords.push_back(Complex{parse_real(p), 0.0});
    } else if (d == 1 && parts.size() == 2) {
      coords.push_back(Complex{parse_real(parts[0]), parse_real(parts[1])});
    } else {
      throw DomainError("point '" + text + "' does not match dimension " + std::to_string(d));
    }
  }
  if (coords.size() != d)
    throw DomainError("point '" + text + "' does not match dimension " + std::to_string(d));
  return CPoint(std::move(coords));
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  for (const auto& p : split(text, ',')) out.push_back(parse_real(p));
  return out;
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_reals(text)) {
    if (v != std::floor(v)) throw DomainError("expected integers in '" + text + "'");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<unsigned> parse_unsigned(const std::string& text) {
  std::vector<unsigned> out;
  for (int v : parse_ints(text)) {
    if (v < 0) throw DomainError("expected nonnegative integers in '" + text + "'");
    out.push_back(static_cast<unsigned>(v));
  }
  return out;
}

std::vector<int> resolve_nodes(const std::string& text, std::size_t d, int fallback) {
  if (text.empty()) return std::vector<int>(d, fallback);
  auto nodes = parse_ints(text);
  if (nodes.size() == 1 && d > 1) return std::vector<int>(d, nodes[0]);
  if (nodes.size() != d) throw DomainError("--nodes does not match dimension");
  return nodes;
}

std::string format_complex_human(Complex v) {
  std::ostringstream os;
  os << v.real() << (v.imag() < 0 ? "" : "+") << v.imag() << "i";
  return os.str();
}

/// Expression string of a polynomial (Taylor truncation), round-trippable by
/// the parser; vector/matrix values wrap per-entry strings in constructors.
std::string polynomial_expression(const TaylorSeries& series) {
  const SpacePtr& space = series.space();
  const std::size_t entries = space->entry_count();
  std::vector<std::string> per_entry(entries);
  for (std::size_t e = 0; e < entries; ++e) {
    std::string s;
    for (const auto& [beta, value] : series.coefficients()) {
      std::string term = expr::detail::format_literal(value[e]);
      for (std::size_t j = 0; j < beta.dim(); ++j) {
        if (beta[j] == 0) continue;
        term += "*z" + std::to_string(j + 1);
        if (beta[j] > 1) term += "^" + std::to_string(beta[j]);
      }
      if (!s.empty()) s += "+";
      s += term;
    }
    per_entry[e] = s.empty() ? "0" : s;
  }
  if (space->kind() == SpaceDescriptor::Kind::Matrices) {
    const std::size_t m = space->m();
    std::string s = "[";
    for (std::size_t r = 0; r < m; ++r) {
      if (r) s += ",";
      s += "[";
      for (std::size_t c = 0; c < m; ++c) s += (c ? "," : "") + per_entry[r * m + c];
      s += "]";
    }
    return s + "]";
  }
  if (space->m() == 1) return per_entry[0];
  std::string s = "[";
  for (std::size_t e = 0; e < entries; ++e) s += (e ? "," : "") + per_entry[e];
  return s + "]";
}

struct CommonArgs {
  std::string expression;
  std::string samples_path;
  std::size_t d = 1;
  std::string center_text;
  std::string radii_text;
  std::string nodes_text;
  std::string out_path;
  std::string format = "json";
  unsigned seed = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_disc,
                bool accepts_samples = false) {
  auto* expr_opt = cmd->add_option("--expr", args.expression, "expression in z1..zd");
  if (accepts_samples) {
    cmd->add_option("--samples", args.samples_path,
                    "boundary-sample JSON file instead of --expr (disc and nodes come from "
                    "the file)")
        ->excludes(expr_opt);
  } else {
    expr_opt->required();
  }
  auto* d_opt = cmd->add_option("--d", args.d, "number of complex variables");
  if (!accepts_samples) d_opt->required();
  if (needs_disc) {
    cmd->add_option("--center", args.center_text, "disc center (default origin)");
    auto* radii_opt = cmd->add_option("--radii", args.radii_text, "disc radii, comma separated");
    if (!accepts_samples) radii_opt->required();
  }
  cmd->add_option("--nodes", args.nodes_text, "boundary nodes per axis (default 64)");
  cmd->add_option("--out", args.out_path, "output path (default stdout)");
  cmd->add_option("--format", args.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--seed", args.seed, "seed recorded in the config echo");
}

BoundarySamples resolve_samples(const CommonArgs& args) {
  if (!args.samples_path.empty()) {
    std::ifstream in(args.samples_path);
    if (!in) throw DomainError("cannot open samples file '" + args.samples_path + "'");
    Json doc = Json::parse(in, nullptr, true);
    // accept either a bare samples document or a taylor-command envelope
    if (doc.contains("values")) return json_io::boundary_samples_from_json(doc);
    if (doc.contains("result") && doc["result"].contains("samples"))
      return json_io::boundary_samples_from_json(doc["result"]["samples"]);
    throw DomainError("samples file '" + args.samples_path +
                      "' does not contain a boundary-sample document");
  }
  if (args.expression.empty())
    throw DomainError("one of --expr or --samples is required");
  if (args.radii_text.empty()) throw DomainError("--radii is required with --expr");
  Expr e = Expr::parse(args.expression, args.d);
  const Polydisc disc(args.center_text.empty() ? CPoint::zero(args.d)
                                               : parse_point(args.center_text, args.d),
                      [&] {
                        std::vector<double> radii = parse_reals(args.radii_text);
                        if (radii.size() == 1 && args.d > 1) radii.assign(args.d, radii[0]);
                        return radii;
                      }());
  const auto nodes = resolve_nodes(args.nodes_text, args.d, kDefaultCircleNodes);
  return BoundarySamples::sample(e.to_integrand(), disc, nodes);
}

Polydisc make_disc(const CommonArgs& args) {
  const CPoint center = args.center_text.empty() ? CPoint::zero(args.d)
                                                 : parse_point(args.center_text, args.d);
  std::vector<double> radii = parse_reals(args.radii_text);
  if (radii.size() == 1 && args.d > 1) radii.assign(args.d, radii[0]);
  return Polydisc(center, std::move(radii));
}

Json config_echo(const std::string& command, const CommonArgs& args) {
  Json j;
  j["command"] = command;
  j["expr"] = args.expression;
  j["d"] = args.d;
  if (!args.center_text.empty()) j["center"] = args.center_text;
  if (!args.radii_text.empty()) j["radii"] = args.radii_text;
  if (!args.nodes_text.empty()) j["nodes"] = args.nodes_text;
  j["format"] = args.format;
  j["seed"] = args.seed;
  return j;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void csv_flatten(const Json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items())
      csv_flatten(value, prefix.empty() ? key : prefix + "." + key, os);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      csv_flatten(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else {
    os << csv_escape(prefix) << "," << j.dump() << "\n";
  }
}

std::string render_csv(const std::string& command, const Json& result) {
  std::ostringstream os;
  if (command == "taylor" && result.contains("series")) {
    const Json& series = result["series"];
    const std::size_t d = series["center"].size();
    for (std::size_t j = 0; j < d; ++j) os << "beta" << j + 1 << ",";
    os << "entry,re,im\n";
    for (const auto& coeff : series["coefficients"]) {
      for (std::size_t e = 0; e < coeff["value"].size(); ++e) {
        for (const auto& b : coeff["beta"]) os << b.dump() << ",";
        os << e << "," << coeff["value"][e][0].dump() << "," << coeff["value"][e][1].dump()
           << "\n";
      }
    }
    return os.str();
  }
  if (result.contains("value")) {
    os << "entry,re,im\n";
    const Json& value = result["value"];
    for (std::size_t e = 0; e < value.size(); ++e)
      os << e << "," << value[e][0].dump() << "," << value[e][1].dump() << "\n";
    return os.str();
  }
  os << "key,value\n";
  csv_flatten(result, "", os);
  return os.str();
}

void emit(const CommonArgs& args, const std::string& command, Json result) {
  Json envelope;
  envelope["command"] = command;
  envelope["config"] = config_echo(command, args);
  envelope["result"] = std::move(result);
  std::string text = args.format == "csv" ? render_csv(command, envelope["result"])
                                          : envelope.dump(2) + "\n";
  if (args.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(args.out_path, std::ios::binary);
    if (!out) throw DomainError("cannot open output path '" + args.out_path + "'");
    out << text;
  }
}

CurveAxis parse_axis(const std::string& spec) {
  const auto head = spec.find(':');
  if (head == std::string::npos)
    throw DomainError("axis spec '" + spec + "' must be kind:params");
  const std::string kind = spec.substr(0, head);
  const std::vector<double> p = parse_reals(spec.substr(head + 1));
  if (kind == "circle") {
    if (p.size() != 3) throw DomainError("circle axis needs cre,cim,r");
    return CurveAxis::circle(Complex{p[0], p[1]}, p[2]);
  }
  if (kind == "segment") {
    if (p.size() != 4) throw DomainError("segment axis needs pre,pim,qre,qim");
    return CurveAxis::segment(Complex{p[0], p[1]}, Complex{p[2], p[3]});
  }
  if (kind == "arc") {
    if (p.size() != 5) throw DomainError("arc axis needs cre,cim,r,theta0,theta1");
    return CurveAxis::arc(Complex{p[0], p[1]}, p[2], p[3], p[4]);
  }
  throw DomainError("unknown axis kind '" + kind + "'");
}

int run(int argc, char** argv) {
  CLI::App app{
      "polydisc: boundary-integral calculus for vector-valued holomorphic functions on "
      "polydiscs"};
  app.require_subcommand(1);

  CommonArgs args;
  unsigned max_degree = 8;
  std::string beta_text, at_text, axes_text, thin_text, target_text, expr2_text;
  std::string seminorm = "sup";
  std::string radii_seq_text = "2,8";
  std::vector<std::string> disc_texts;
  unsigned liouville_degree = 0;
  unsigned identity_degree = 8;
  unsigned degree_cap = 64;
  double epsilon = 1e-3, tol = 1e-10, fd_step = 1e-4;

  auto* taylor = app.add_subcommand(
      "taylor", "Taylor coefficients from distinguished-boundary samples (one DFT pass)");
  add_common(taylor, args, true, true);
  taylor->add_option("--max-degree", max_degree, "highest total degree")->required();

  auto* deriv = app.add_subcommand(
      "deriv", "derivative of any order at a point via the boundary integral for derivatives");
  add_common(deriv, args, true, true);
  deriv->add_option("--beta", beta_text, "derivative multi-index, comma separated")->required();
  deriv->add_option("--at", at_text, "evaluation point")->required();

  auto* integrate = app.add_subcommand(
      "integrate", "curve integral along a tensor-product C1 curve");
  add_common(integrate, args, false);
  integrate->add_option("--axes", axes_text,
                        "per-axis curve specs joined by '|': circle:cre,cim,r | "
                        "segment:pre,pim,qre,qim | arc:cre,cim,r,t0,t1")
      ->required();

  auto* check = app.add_subcommand(
      "check-holo",
      "holomorphy diagnostics: Cauchy-Riemann residual, boundary spectrum, per-axis slices, "
      "functional probes");
  add_common(check, args, true);
  check->add_option("--step", fd_step, "finite-difference step (default 1e-4)");
  check->add_option("--tol", tol, "spectral tolerance (default 1e-10)");

  auto* liouville = app.add_subcommand(
      "liouville", "polynomial-degree classification from coefficient decay across radii");
  add_common(liouville, args, false);
  liouville->add_option("--degree", liouville_degree, "candidate degree k")->required();
  liouville->add_option("--radii-seq", radii_seq_text, "increasing radii (default 2,8)");
  liouville->add_option("--seminorm", seminorm, "seminorm name (default sup)");
  liouville->add_option("--tol", tol, "coefficient tolerance (default 1e-8)")
      ->default_val(1e-8);

  auto* extend = app.add_subcommand(
      "extend", "holomorphic extension across a thin set via the order-zero boundary integral");
  add_common(extend, args, false);
  extend->add_option("--thin", thin_text, "defining polynomial of the thin set")->required();
  extend->add_option("--target", target_text, "extension point")->required();
  extend
      ->add_option("--disc", disc_texts,
                   "search disc 'center|radii' (repeatable, tried in order)")
      ->required();

  auto* approx = app.add_subcommand(
      "approx", "polynomial approximation in the algebra of the closed polydisc");
  add_common(approx, args, true);
  approx->add_option("--epsilon", epsilon, "target accuracy (certified error <= 2 epsilon)")
      ->required();
  approx->add_option("--seminorm", seminorm, "seminorm name (default sup)");
  approx->add_option("--degree-cap", degree_cap, "maximum polynomial degree (default 64)");

  auto* certify = app.add_subcommand(
      "certify-identity", "certify f = g on a disc by expanding f - g at the center");
  add_common(certify, args, true);
  certify->add_option("--expr2", expr2_text, "second expression g")->required();
  certify->add_option("--degree", identity_degree, "coefficient degree to compare");
  certify->add_option("--tol", tol, "coefficient tolerance (default 1e-10)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 64;
  }

  if (taylor->parsed()) {
    BoundarySamples samples = resolve_samples(args);
    TaylorSeries series = taylor_coefficients(samples, max_degree);
    Json result;
    result["series"] = json_io::to_json(series);
    result["samples"] = json_io::to_json(samples);
    emit(args, "taylor", std::move(result));
    return 0;
  }

  if (deriv->parsed()) {
    BoundarySamples samples = resolve_samples(args);
    const CPoint at = parse_point(at_text, samples.dim());
    MultiIndex beta(parse_unsigned(beta_text));
    CauchyResult r = cauchy_derivative(samples, at, beta);
    Json result;
    result["value"] = json_io::entries_to_json(r.value);
    result["margin_warning"] = r.margin_warning;
    if (r.value.size() == 1) std::cout << format_complex_human(r.value[0]) << "\n";
    emit(args, "deriv", std::move(result));
    return 0;
  }

  if (integrate->parsed()) {
    Expr e = Expr::parse(args.expression, args.d);
    std::vector<CurveAxis> axes;
    for (const auto& spec : split(axes_text, '|')) axes.push_back(parse_axis(spec));
    if (axes.size() != args.d) throw DomainError("--axes does not match dimension");
    CurveC1 curve(std::move(axes));
    auto f = e.to_integrand();
    std::vector<int> nodes;
    if (!args.nodes_text.empty()) nodes = resolve_nodes(args.nodes_text, args.d, 0);
    bool degenerate = false;
    VectorValue v = integrate_curve(f, curve, nodes, 0, &degenerate);
    Json result;
    result["value"] = json_io::entries_to_json(v);
    result["degenerate_curve"] = degenerate;
    if (v.size() == 1) std::cout << format_complex_human(v[0]) << "\n";
    emit(args, "integrate", std::move(result));
    return 0;
  }

  if (check->parsed()) {
    Expr e = Expr::parse(args.expression, args.d);
    const Polydisc disc = make_disc(args);
    auto f = e.to_integrand();
    const auto nodes = resolve_nodes(args.nodes_text, args.d, kDefaultCircleNodes);

    DiagnosticReport cr = cr_residual(f, default_interior_points(disc, 8), fd_step);
    DiagnosticReport spectrum =
        negative_spectrum_check(BoundarySamples::sample(f, disc, nodes), tol);
    std::vector<double> slice_radii;
    for (double r : disc.radii()) slice_radii.push_back(0.5 * r);
    DiagnosticReport separate = separate_holomorphy_check(
        f, default_interior_points(disc, 8, 0.4), slice_radii, nodes[0], tol);
    DiagnosticReport weak = weak_holomorphy_probe(
        f, Functional::coordinate_probes(f.space), disc, nodes[0], tol);

    const bool all_pass = cr.verdict == Verdict::Pass && spectrum.verdict == Verdict::Pass &&
                          separate.verdict == Verdict::Pass && weak.verdict == Verdict::Pass;
    Json result;
    result["overall"] = all_pass ? "pass" : "fail";
    result["tainted_expression"] = e.tainted();
    result["cr_residual"] = json_io::to_json(cr);
    result["negative_spectrum"] = json_io::to_json(spectrum);
    result["separate_holomorphy"] = json_io::to_json(separate);
    result["weak_holomorphy"] = json_io::to_json(weak);
    std::cout << "verdict: " << (all_pass ? "pass" : "fail") << "\n";
    emit(args, "check-holo", std::move(result));
    return 0;
  }

  if (liouville->parsed()) {
    Expr e = Expr::parse(args.expression, args.d);
    auto f = e.to_integrand();
    LiouvilleResult r =
        liouville_test(f, args.d, liouville_degree, parse_reals(radii_seq_text), seminorm, tol);
    Json result;
    result["is_poly_deg_k"] = r.is_poly_deg_k;
    if (r.witness) {
      result["witness"] = Json{{"beta", r.witness->beta.exponents()},
                               {"radius", r.witness->radius},
                               {"magnitude", r.witness->magnitude}};
    }
    std::cout << (r.is_poly_deg_k ? "true" : "false") << "\n";
    emit(args, "liouville", std::move(result));
    return 0;
  }

  if (extend->parsed()) {
    Expr e = Expr::parse(args.expression, args.d);
    ThinSetSpec thin(Expr::parse(thin_text, args.d));
    const CPoint target = parse_point(target_text, args.d);
    std::vector<Polydisc> discs;
    for (const auto& text : disc_texts) {
      const auto parts = split(text, '|');
      if (parts.size() != 2) throw DomainError("--disc must be 'center|radii'");
      std::vector<double> radii = parse_reals(parts[1]);
      if (radii.size() == 1 && args.d > 1) radii.assign(args.d, radii[0]);
      discs.push_back(Polydisc(parse_point(parts[0], args.d), std::move(radii)));
    }
    auto base = e.to_integrand(e.natural_space());
    IntegrandFn f{base.eval, base.space,
                  [&thin](const CPoint& z) { return !thin.excludes(z); }, base.smoothness};
    const int nodes = args.nodes_text.empty() ? kDefaultCircleNodes
                                              : parse_ints(args.nodes_text)[0];
    VectorValue v = riemann_extend(f, thin, target, discs, nodes);
    Json result;
    result["value"] = json_io::entries_to_json(v);
    if (v.size() == 1) std::cout << format_complex_human(v[0]) << "\n";
    emit(args, "extend", std::move(result));
    return 0;
  }

  if (approx->parsed()) {
    Expr e = Expr::parse(args.expression, args.d);
    const Polydisc disc = make_disc(args);
    auto f = e.to_integrand();
    ApproxOptions options;
    options.degree_cap = degree_cap;
    ApproxResult r = approx_polynomial(f, disc, epsilon, seminorm, options);
    Json result;
    result["certified_error"] = r.certified_error;
    result["r_used"] = r.r_used;
    result["degree_used"] = r.degree_used;
    result["delta_used"] = r.delta_used;
    result["polynomial"] = json_io::to_json(r.polynomial);
    result["polynomial_expr"] = polynomial_expression(r.polynomial);
    emit(args, "approx", std::move(result));
    return 0;
  }

  if (certify->parsed()) {
    Expr e = Expr::parse(args.expression, args.d);
    Expr e2 = Expr::parse(expr2_text, args.d);
    const Polydisc disc = make_disc(args);
    IdentityResult r =
        identity_certify(e.to_integrand(), e2.to_integrand(), disc, identity_degree, tol);
    Json result;
    result["equal_on_disc"] = r.equal_on_disc;
    result["max_coeff_gap"] = r.max_coeff_gap;
    if (r.witness) result["witness_beta"] = r.witness->exponents();
    std::cout << (r.equal_on_disc ? "equal" : "different") << "\n";
    emit(args, "certify-identity", std::move(result));
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IntegrationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ExtensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}
