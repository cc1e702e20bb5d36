#include "pc/cli.hpp"

#include "pc/bounds.hpp"
#include "pc/chabauty.hpp"
#include "pc/error.hpp"
#include "pc/expectation.hpp"
#include "pc/json_io.hpp"
#include "pc/model.hpp"
#include "pc/projred.hpp"
#include "pc/series.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

namespace pc::cli {

namespace {

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

[[noreturn]] void bad_input(const std::string& what, const std::string& text) {
  fail(ErrorCode::InvalidArgument, "cannot parse " + what + " '" + text + "'");
}

// One monomial coeff * x^a * y^b of a signed term.
struct Monomial {
  Rational coeff = 1;
  std::map<char, int> exps;
};

class TermParser {
 public:
  TermParser(std::string text, std::string vars) : s_(strip_spaces(text)), vars_(std::move(vars)) {}

  std::vector<Monomial> parse(const std::string& what) {
    if (s_.empty()) bad_input(what, s_);
    std::vector<Monomial> out;
    while (i_ < s_.size()) {
      int sign = 1;
      if (s_[i_] == '+' || s_[i_] == '-') {
        sign = s_[i_] == '-' ? -1 : 1;
        ++i_;
      } else if (!out.empty()) {
        bad_input(what, s_);
      }
      Monomial m = term(what);
      m.coeff *= sign;
      out.push_back(std::move(m));
    }
    return out;
  }

 private:
  bool digit() const { return i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])); }

  Integer number(const std::string& what) {
    size_t start = i_;
    while (digit()) ++i_;
    if (start == i_) bad_input(what, s_);
    return Integer(s_.substr(start, i_ - start));
  }

  Monomial term(const std::string& what) {
    Monomial m;
    bool any = false;
    if (digit()) {
      m.coeff = Rational(number(what));
      any = true;
      if (i_ < s_.size() && s_[i_] == '/') {
        ++i_;
        Integer d = number(what);
        if (d == 0) fail(ErrorCode::ZeroDenominator, "zero denominator in '" + s_ + "'");
        m.coeff /= Rational(d);
      }
    }
    while (i_ < s_.size()) {
      if (s_[i_] == '*') {
        ++i_;
        continue;
      }
      if (vars_.find(s_[i_]) == std::string::npos) break;
      char v = s_[i_++];
      int e = 1;
      if (i_ < s_.size() && s_[i_] == '^') {
        ++i_;
        if (!digit()) bad_input(what, s_);
      }
      if (digit()) e = static_cast<int>(number(what).get_si());
      m.exps[v] += e;
      any = true;
    }
    if (i_ < s_.size() && s_[i_] == '/') {
      ++i_;
      Integer d = number(what);
      if (d == 0) fail(ErrorCode::ZeroDenominator, "zero denominator in '" + s_ + "'");
      m.coeff /= Rational(d);
    }
    if (!any || (i_ < s_.size() && s_[i_] != '+' && s_[i_] != '-')) bad_input(what, s_);
    m.coeff.canonicalize();
    return m;
  }

  std::string s_;
  std::string vars_;
  size_t i_ = 0;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

}  // namespace

std::vector<Integer> parse_integer_list(const std::string& text) {
  std::vector<Integer> out;
  for (const auto& item : split(text, ',')) {
    std::string t = strip_spaces(item);
    try {
      out.push_back(parse_integer(t));
    } catch (const Error&) {
      bad_input("integer", t);
    }
  }
  if (out.empty()) bad_input("coefficient list", text);
  return out;
}

std::vector<Rational> parse_polynomial(const std::string& text, char var) {
  std::vector<Rational> c;
  for (const auto& m : TermParser(text, std::string(1, var)).parse("polynomial")) {
    int e = m.exps.count(var) ? m.exps.at(var) : 0;
    if (c.size() <= static_cast<size_t>(e)) c.resize(static_cast<size_t>(e) + 1, 0);
    c[static_cast<size_t>(e)] += m.coeff;
  }
  for (auto& x : c) x.canonicalize();
  return c;
}

ParsedCurve parse_curve(const std::string& text) {
  auto sides = split(strip_spaces(text), '=');
  if (sides.size() != 2) bad_input("curve (expected 'y2 + q(x) y = r(x)')", text);
  // F(x, y) = lhs - rhs, collected by powers of y.
  std::map<int, std::map<int, Rational>> F;
  for (int side = 0; side < 2; ++side)
    for (const auto& m : TermParser(sides[static_cast<size_t>(side)], "xy").parse("curve")) {
      int ex = m.exps.count('x') ? m.exps.at('x') : 0;
      int ey = m.exps.count('y') ? m.exps.at('y') : 0;
      F[ey][ex] += side == 0 ? m.coeff : -m.coeff;
    }
  auto poly = [&](int ey, int sign) {
    std::vector<Integer> out;
    for (const auto& [ex, c] : F[ey]) {
      Rational v = c;
      v.canonicalize();
      if (v.get_den() != 1) fail(ErrorCode::InvalidArgument, "curve coefficients must be integers");
      if (out.size() <= static_cast<size_t>(ex)) out.resize(static_cast<size_t>(ex) + 1, 0);
      out[static_cast<size_t>(ex)] = sign * v.get_num();
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
  };
  for (const auto& [ey, terms] : F)
    if (ey > 2) fail(ErrorCode::InvalidArgument, "curve must be quadratic in y");
  std::vector<Integer> y2 = poly(2, 1);
  if (y2 != std::vector<Integer>{1}) fail(ErrorCode::InvalidArgument, "the y^2 coefficient must be 1");
  ParsedCurve pc;
  pc.q = poly(1, 1);
  pc.r = poly(0, -1);
  int deg = static_cast<int>(pc.r.size()) - 1;
  if (deg < 3 || deg % 2 == 0) fail(ErrorCode::InvalidArgument, "r(x) must have odd degree 2g+1 >= 3");
  pc.genus = (deg - 1) / 2;
  return pc;
}

namespace {

struct RunConfig {
  std::string command;
  long prime = 2;
  std::optional<int> genus;
  std::string coefficients;
  std::string curve;
  std::string maps;
  std::string domain = "P1";
  int precision = 0;
  int truncation = 0;
  long trials = 1000;
  std::uint64_t seed = 1;
  std::optional<int> depth_guard;
  std::optional<int> max_depth;
  int k = 0;
  std::optional<long> disks;
  std::optional<long> excluded;
  std::optional<long> delta_N;
  std::string format = "json";
  std::string out_path;
  int threads = 0;
};

// Splits --f into a_1..a_(2g+1), accepting a leading 1 for the monic term.
std::vector<Integer> curve_coefficients(const std::vector<Integer>& list, std::optional<int>& genus) {
  std::vector<Integer> a = list;
  if (a.size() % 2 == 0) {
    if (a.front() != 1) fail(ErrorCode::InvalidArgument, "--f: a leading coefficient must be 1 (f is monic)");
    a.erase(a.begin());
  }
  if (a.size() < 3) fail(ErrorCode::InvalidArgument, "--f: expected a_1..a_(2g+1) with g >= 1");
  int g = static_cast<int>(a.size() - 1) / 2;
  if (genus && *genus != g)
    fail(ErrorCode::InvalidArgument, "--f: " + std::to_string(a.size()) + " coefficients do not match --g " +
                                         std::to_string(*genus));
  genus = g;
  return a;
}

std::vector<Integer> model_coefficients(RunConfig& cfg) {
  if (!cfg.curve.empty()) {
    ParsedCurve c = parse_curve(cfg.curve);
    if (!c.q.empty()) fail(ErrorCode::InvalidArgument, "--curve: the decent model needs the form y^2 = f(x)");
    if (c.r.back() != 1) fail(ErrorCode::InvalidArgument, "--curve: f must be monic");
    std::vector<Integer> desc(c.r.rbegin(), c.r.rend());
    return curve_coefficients(desc, cfg.genus);
  }
  if (cfg.coefficients.empty()) fail(ErrorCode::InvalidArgument, "--f or --curve is required");
  return curve_coefficients(parse_integer_list(cfg.coefficients), cfg.genus);
}

int working_precision(long p, int g, const std::vector<Integer>& a) {
  std::vector<Integer> f(a.rbegin(), a.rend());
  f.push_back(1);
  (void)g;
  Integer d = discriminant(f);
  if (d == 0) fail(ErrorCode::DiscriminantZero, "the discriminant of f is zero");
  return 2 * valuation(d, p) + 16;
}

SeriesVector parse_series(const RunConfig& cfg) {
  if (cfg.maps.empty()) fail(ErrorCode::InvalidArgument, "--series is required");
  const int M = cfg.precision > 0 ? cfg.precision : 32;
  std::vector<std::vector<Rational>> polys;
  size_t longest = 1;
  for (const auto& s : split(cfg.maps, ';')) {
    polys.push_back(parse_polynomial(s, 't'));
    longest = std::max(longest, polys.back().size());
  }
  size_t T = cfg.truncation > 0 ? static_cast<size_t>(cfg.truncation) : longest;
  SeriesVector out;
  for (auto& c : polys) {
    if (c.size() > T) fail(ErrorCode::InvalidArgument, "--truncation is shorter than a series");
    c.resize(T, 0);
    // Zero coefficients of a typed-in polynomial are exact.
    std::vector<PadicNumber> coeffs;
    for (const auto& x : c)
      coeffs.push_back(x == 0 ? PadicNumber::zero(cfg.prime) : PadicNumber::make(cfg.prime, x.get_num(), x.get_den(), M));
    out.emplace_back(cfg.prime, std::move(coeffs));
  }
  return out;
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::string points_text(const std::vector<ProjPointFp>& pts) {
  std::string s = "{";
  for (size_t i = 0; i < pts.size(); ++i) s += (i ? ", " : "") + pts[i].to_string();
  return s + "}";
}

struct Output {
  Json json;
  std::string text;
  std::string csv;  // empty when the command has no CSV form
};

Output cmd_model(RunConfig& cfg) {
  std::vector<Integer> a = model_coefficients(cfg);
  int K = cfg.precision > 0 ? cfg.precision : working_precision(cfg.prime, *cfg.genus, a);
  CurveInput curve = CurveInput::from_integers(cfg.prime, *cfg.genus, a, K);
  DecentModel m = make_decent_model(curve, cfg.depth_guard);
  Output o;
  o.json = to_json(m);
  o.text = "total_smooth " + std::to_string(m.total_smooth) + "\nmax_depth " + std::to_string(m.max_depth_reached) + "\n";
  return o;
}

Output cmd_height(RunConfig& cfg) {
  std::vector<Integer> a = model_coefficients(cfg);
  double h = height(a);
  Output o;
  o.json = {{"genus", *cfg.genus}, {"height", h}};
  o.text = fmt_double(h) + "\n";
  return o;
}

SampleConfig sample_config(const RunConfig& cfg) {
  SampleConfig s;
  s.prime = cfg.prime;
  s.genus = cfg.genus.value_or(2);
  s.trials = cfg.trials;
  s.seed = cfg.seed;
  s.depth_guard = cfg.depth_guard.value_or(10);
  s.threads = cfg.threads;
  return s;
}

Output cmd_expect_mc(const RunConfig& cfg) {
  SampleConfig s = sample_config(cfg);
  s.keep_rows = cfg.format == "csv";
  MCResult r = mc_average_smooth(s);
  Output o;
  o.json = to_json(r);
  o.json["config"] = {{"p", s.prime}, {"g", s.genus}, {"seed", s.seed}, {"depth_guard", s.depth_guard}};
  o.text = "mean " + rational_string(r.mean) + " (" + fmt_double(r.mean.get_d()) + ")\nstderr " +
           fmt_double(r.stderr_) + "\nguard_hits " + std::to_string(r.guard_hits) + "\n";
  std::ostringstream csv;
  csv << "trial,total_smooth,max_depth\n";
  for (const auto& row : r.rows) csv << row.trial << ',' << row.total_smooth << ',' << row.max_depth << '\n';
  o.csv = csv.str();
  return o;
}

Output cmd_expect_exact(const RunConfig& cfg) {
  EnumResult r = exact_truncated_average(cfg.prime, cfg.genus.value_or(1), cfg.k);
  Output o;
  o.json = to_json(r);
  o.text = rational_string(r.value) + "\n";
  return o;
}

Output cmd_expect_cases(const RunConfig& cfg) {
  SampleConfig s = sample_config(cfg);
  FrequencyTable t = case_frequencies(s.prime, s.genus, s.trials, s.seed);
  Output o;
  o.json = to_json(t);
  std::ostringstream text, csv;
  csv << "case,count,expected\n";
  for (size_t i = 0; i < t.labels.size(); ++i) {
    text << t.labels[i] << ": " << t.counts[i] << " / " << t.trials << " (expected " << rational_string(t.expected[i])
         << ")\n";
    csv << t.labels[i] << ',' << t.counts[i] << ',' << rational_string(t.expected[i]) << '\n';
  }
  o.text = text.str();
  o.csv = csv.str();
  return o;
}

Output cmd_expect_x0(const RunConfig& cfg) {
  SampleConfig s = sample_config(cfg);
  X0Report r = x0_statistics(s.prime, s.genus, s.trials, s.seed, s.depth_guard, s.threads);
  Output o;
  o.json = to_json(r);
  std::ostringstream text, csv;
  text << "mean " << rational_string(r.mean) << " (" << fmt_double(r.mean.get_d()) << ")\n";
  csv << "B,count,frequency,bound\n";
  for (const auto& t : r.tails) {
    text << "P(X0 >= " << t.bound << ") = " << rational_string(t.frequency) << " <= " << rational_string(t.tail_bound)
         << "\n";
    csv << t.bound << ',' << t.count << ',' << rational_string(t.frequency) << ',' << rational_string(t.tail_bound)
        << '\n';
  }
  o.text = text.str();
  o.csv = csv.str();
  return o;
}

GoodReductionCurve good_curve(const RunConfig& cfg) {
  if (cfg.curve.empty()) fail(ErrorCode::InvalidArgument, "--curve is required");
  ParsedCurve c = parse_curve(cfg.curve);
  if (cfg.genus && *cfg.genus != c.genus)
    fail(ErrorCode::InvalidArgument, "--g " + std::to_string(*cfg.genus) + " does not match the curve's genus " +
                                         std::to_string(c.genus));
  return GoodReductionCurve::make(cfg.prime, c.genus, c.q, c.r);
}

Output rholog_output(const RhoLogResult& r) {
  Output o;
  o.json = to_json(r);
  std::ostringstream text;
  for (const auto& d : r.disks)
    text << "disk " << d.disk.to_string() << ": n_D " << d.n_D << ", bound " << d.bound << ", image "
         << points_text(d.image.points) << "\n";
  text << (r.full_image ? "rho log " : "union of disk images ") << points_text(r.union_points) << "\n";
  if (r.hypotheses)
    for (const auto& c : r.hypotheses->checks) text << c.name << ": " << to_string(c.status) << "\n";
  o.text = text.str();
  return o;
}

DiskOptions disk_options(const RunConfig& cfg) {
  DiskOptions opt;
  opt.truncation = cfg.truncation;
  return opt;
}

Output cmd_rholog(const RunConfig& cfg) {
  GoodReductionCurve c = good_curve(cfg);
  return rholog_output(c.prime == 2 ? rholog_single_disk_curve(c, disk_options(cfg))
                                    : analyze_residue_disks(c, disk_options(cfg)));
}

Output cmd_disks(const RunConfig& cfg) {
  GoodReductionCurve c = good_curve(cfg);
  RhoLogResult r = analyze_residue_disks(c, disk_options(cfg));
  Output o = rholog_output(r);
  if (c.prime == 2) o.json["hypotheses"] = to_json(verify_hypotheses(c));
  return o;
}

Output image_output(const ReductionImage& img) {
  Output o;
  o.json = to_json(img);
  o.text = std::to_string(img.points.size()) + " " + points_text(img.points) + "\n";
  return o;
}

Output cmd_p1image(const RunConfig& cfg) {
  if (cfg.maps.empty()) fail(ErrorCode::InvalidArgument, "--map is required");
  const int K = cfg.precision > 0 ? cfg.precision : 64;
  std::vector<PadicPoly> f;
  for (const auto& s : split(cfg.maps, ';')) f.push_back(PadicPoly::from_rationals(cfg.prime, parse_polynomial(s, 't'), K));
  Domain d = cfg.domain == "P1" ? Domain::P1 : cfg.domain == "Zp" ? Domain::Zp : Domain::pZp;
  return image_output(image_of_poly_map(cfg.prime, f, d, cfg.max_depth));
}

Output cmd_seriesimage(const RunConfig& cfg) {
  SeriesVector l = parse_series(cfg);
  const int M = cfg.precision > 0 ? cfg.precision : 32;
  return image_output(image_of_series_on_pZp(l, M, l.front().truncation()));
}

Output cmd_newton(const RunConfig& cfg) {
  NewtonPolygon np = newton_polygon(parse_series(cfg));
  Output o;
  o.json = to_json(np);
  std::ostringstream text;
  text << "vertices";
  for (const auto& v : np.vertices) text << " (" << v.n << "," << v.v << (v.stable ? "" : ",unstable") << ")";
  text << "\n";
  try {
    NAndN nn = n_and_N(np);
    o.json["n_and_N"] = to_json(nn);
    text << "n " << nn.n << "\nN " << (nn.N ? std::to_string(*nn.N) : std::string("unbounded-within-truncation"))
         << "\n";
  } catch (const Error& e) {
    o.json["n_and_N"] = {{"error", to_string(e.code())}};
    text << "n_and_N " << to_string(e.code()) << "\n";
  }
  o.text = text.str();
  return o;
}

Output cmd_wprep(const RunConfig& cfg) {
  SeriesVector l = parse_series(cfg);
  if (l.size() != 1) fail(ErrorCode::InvalidArgument, "--series: preparation takes a single series");
  const int M = cfg.precision > 0 ? cfg.precision : 32;
  WeierstrassFactorization w = weierstrass_prepare(l.front(), M, l.front().truncation());
  Output o;
  o.json = to_json(w);
  o.text = "degree " + std::to_string(w.degree) + "\npoly_part " + to_string(w.poly_part, 't') + "\n";
  return o;
}

Output cmd_bounds(const RunConfig& cfg) {
  if (!cfg.genus) fail(ErrorCode::InvalidArgument, "--g is required");
  const int g = *cfg.genus;
  const long p = cfg.prime;
  std::vector<BoundReport> reps;
  auto add = [&](std::string id, Rational v, std::optional<long> d = std::nullopt) {
    BoundReport b;
    b.formula = std::move(id);
    b.prime = p;
    b.genus = g;
    b.disks = d;
    b.value = std::move(v);
    reps.push_back(std::move(b));
  };
  add("avg_rholog_bound", avg_rholog_bound(p, g, false));
  add("avg_rholog_bound_refined", avg_rholog_bound(p, g, true));
  if (cfg.disks) add("curve_image_bound", curve_image_bound(p, *cfg.disks, g), cfg.disks);
  if (g > 1)
    for (auto& b : density_bounds(g, p, cfg.excluded)) reps.push_back(std::move(b));
  if (p > 2 && cfg.disks && cfg.delta_N) {
    add("exact_Delta(N=" + std::to_string(*cfg.delta_N) + ")", Rational(exact_Delta(p, *cfg.disks, *cfg.delta_N)),
        cfg.disks);
  }
  Output o;
  o.json = Json::array();
  std::ostringstream text, csv;
  csv << "formula,p,g,value\n";
  for (const auto& b : reps) {
    o.json.push_back(to_json(b));
    text << b.formula << " = " << rational_string(b.value) << "\n";
    csv << b.formula << ',' << p << ',' << g << ',' << rational_string(b.value) << '\n';
  }
  o.text = text.str();
  o.csv = csv.str();
  return o;
}

int exit_code_for(const Error& e) { return is_certification_failure(e.code()) ? 2 : 1; }

// Integer validator whose failure message states the accepted domain.
CLI::Validator integer_at_least(long lo) {
  const std::string domain = "an integer >= " + std::to_string(lo);
  return CLI::Validator(
      [lo, domain](std::string& value) -> std::string {
        try {
          size_t used = 0;
          long v = std::stol(value, &used);
          if (used == value.size() && v >= lo) return {};
        } catch (const std::exception&) {
        }
        return "expected " + domain + ", got '" + value + "'";
      },
      "INT>=" + std::to_string(lo));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"p-adic Chabauty toolkit: decent models, reduction images and bounds", "padic-chabauty"};
  app.require_subcommand(1);

  const std::vector<std::string> formats{"json", "csv", "text"};
  auto common = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.prime, "prime p")->check(integer_at_least(1));
    sub->add_option("--g", cfg.genus, "genus g >= 1")->check(integer_at_least(1));
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember(formats));
    sub->add_option("--out", cfg.out_path, "write the report to this file instead of stdout");
    sub->add_option("--threads", cfg.threads, "worker threads (default: $PADIC_CHABAUTY_THREADS or all cores)")
        ->check(integer_at_least(0));
  };
  auto curve_opts = [&](CLI::App* sub) {
    sub->add_option("--f", cfg.coefficients, "coefficients a_1,...,a_(2g+1) (optionally preceded by the leading 1)");
    sub->add_option("--curve", cfg.curve, "curve such as \"y2=x3-x\"");
  };
  auto sample_opts = [&](CLI::App* sub) {
    sub->add_option("--trials", cfg.trials, "number of trials >= 1")->check(integer_at_least(1));
    sub->add_option("--seed", cfg.seed, "PRNG seed");
    sub->add_option("--depth-guard", cfg.depth_guard, "blow-up depth guard >= 0")->check(integer_at_least(0));
  };
  auto series_opts = [&](CLI::App* sub) {
    sub->add_option("--series", cfg.maps, "';'-separated series in t, e.g. \"t;t^3/3\"")->required();
    sub->add_option("--precision", cfg.precision, "absolute p-adic precision M >= 1")->check(integer_at_least(1));
    sub->add_option("--truncation", cfg.truncation, "t-adic truncation T >= 1")->check(integer_at_least(1));
  };

  std::map<CLI::App*, std::function<Output()>> handlers;

  auto* model = app.add_subcommand("model", "decent model and smooth-point count of y^2 = f(x)");
  common(model);
  curve_opts(model);
  model->add_option("--depth-guard", cfg.depth_guard, "blow-up depth guard >= 0")->check(integer_at_least(0));
  model->add_option("--precision", cfg.precision, "p-adic precision of the coefficients")->check(integer_at_least(1));
  handlers[model] = [&] { return cmd_model(cfg); };

  auto* expect = app.add_subcommand("expect", "expected number of smooth points");
  expect->require_subcommand(1);
  auto* mc = expect->add_subcommand("mc", "Monte Carlo average of the smooth count");
  common(mc);
  sample_opts(mc);
  handlers[mc] = [&] { return cmd_expect_mc(cfg); };
  auto* exact = expect->add_subcommand("exact", "exact truncated expectation");
  common(exact);
  exact->add_option("--k", cfg.k, "recursion depth k >= 0")->check(integer_at_least(0));
  handlers[exact] = [&] { return cmd_expect_exact(cfg); };
  auto* cases = expect->add_subcommand("cases", "root column case frequencies");
  common(cases);
  sample_opts(cases);
  handlers[cases] = [&] { return cmd_expect_cases(cfg); };
  auto* x0 = expect->add_subcommand("x0", "distribution of the column-0 count");
  common(x0);
  sample_opts(x0);
  handlers[x0] = [&] { return cmd_expect_x0(cfg); };

  auto* rholog = app.add_subcommand("rholog", "rho o log of the rational points for a good-reduction curve");
  common(rholog);
  rholog->add_option("--curve", cfg.curve, "curve such as \"y2+y=x7+x+1\"")->required();
  rholog->add_option("--truncation", cfg.truncation, "initial t-adic truncation")->check(integer_at_least(1));
  handlers[rholog] = [&] { return cmd_rholog(cfg); };

  auto* disks = app.add_subcommand("disks", "per-residue-disk n_D, bounds and local images");
  common(disks);
  disks->add_option("--curve", cfg.curve, "curve such as \"y2=x5+1\"")->required();
  disks->add_option("--truncation", cfg.truncation, "initial t-adic truncation")->check(integer_at_least(1));
  handlers[disks] = [&] { return cmd_disks(cfg); };

  auto* p1image = app.add_subcommand("p1image", "reduction image of a polynomial map");
  common(p1image);
  p1image->add_option("--map", cfg.maps, "';'-separated polynomials in t, e.g. \"1;t\"")->required();
  p1image->add_option("--domain", cfg.domain, "domain")->check(CLI::IsMember({"P1", "Zp", "pZp"}));
  p1image->add_option("--max-depth", cfg.max_depth, "subdivision depth guard")->check(integer_at_least(0));
  p1image->add_option("--precision", cfg.precision, "p-adic precision of rational coefficients")
      ->check(integer_at_least(1));
  handlers[p1image] = [&] { return cmd_p1image(cfg); };

  auto* simage = app.add_subcommand("seriesimage", "reduction image of a series map on pZ_p");
  common(simage);
  series_opts(simage);
  handlers[simage] = [&] { return cmd_seriesimage(cfg); };

  auto* newton = app.add_subcommand("newton", "Newton polygon of a series vector");
  common(newton);
  series_opts(newton);
  handlers[newton] = [&] { return cmd_newton(cfg); };

  auto* wprep = app.add_subcommand("wprep", "Weierstrass preparation of a series");
  common(wprep);
  series_opts(wprep);
  handlers[wprep] = [&] { return cmd_wprep(cfg); };

  auto* bounds = app.add_subcommand("bounds", "closed-form image and density bounds");
  common(bounds);
  bounds->add_option("--d", cfg.disks, "number of residue disks d >= 1")->check(integer_at_least(1));
  bounds->add_option("--excluded", cfg.excluded, "#I for the general density bound")->check(integer_at_least(0));
  bounds->add_option("--N", cfg.delta_N, "N for exact_Delta (needs --d, p > 2)")->check(integer_at_least(0));
  handlers[bounds] = [&] { return cmd_bounds(cfg); };

  auto* heightc = app.add_subcommand("height", "height H(C) of y^2 = f(x)");
  common(heightc);
  curve_opts(heightc);
  handlers[heightc] = [&] { return cmd_height(cfg); };

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  CLI::App* chosen = nullptr;
  for (auto& [sub, fn] : handlers)
    if (sub->parsed()) chosen = sub;
  if (!chosen) {
    err << app.help();
    return 1;
  }
  cfg.command = chosen->get_parent() == expect ? "expect " + chosen->get_name() : chosen->get_name();

  try {
    if (!is_prime(cfg.prime)) fail(ErrorCode::NonPrime, "--p: " + std::to_string(cfg.prime) + " is not prime");
    Output o = handlers[chosen]();
    std::string body;
    if (cfg.format == "json") {
      body = document(cfg.command, o.json).dump(2) + "\n";
    } else if (cfg.format == "text") {
      body = o.text;
    } else {
      if (o.csv.empty()) {
        err << "--format: csv is not available for '" << cfg.command << "'; expected one of json, text\n";
        return 1;
      }
      body = o.csv;
    }
    if (cfg.out_path.empty()) {
      out << body;
    } else {
      std::ofstream f(cfg.out_path, std::ios::binary);
      if (!f) {
        err << "--out: cannot open '" << cfg.out_path << "' for writing\n";
        return 1;
      }
      f << body;
    }
    return 0;
  } catch (const MaxDepthExceededError& e) {
    err << "error: " << e.what() << "\n";
    err << "partial image: " << points_text(e.partial().points) << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace pc::cli
