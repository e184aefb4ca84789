#include "harmalg/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "harmalg/json_io.hpp"
#include "harmalg/mc.hpp"
#include "harmalg/parse.hpp"
#include "harmalg/patterns.hpp"
#include "harmalg/product_span.hpp"
#include "harmalg/sphere.hpp"
#include "harmalg/verify.hpp"

namespace harmalg::cli {

namespace {

using io::json;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Format { Json, Table, Csv };

Bidegree parse_bidegree(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != '(' && c != ')' && c != ' ') s += c;
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError("bidegree must be written p,q: '" + text + "'");
  try {
    std::size_t a = 0, b = 0;
    const int p = std::stoi(s.substr(0, comma), &a);
    const int q = std::stoi(s.substr(comma + 1), &b);
    if (a != comma || b != s.size() - comma - 1 || p < 0 || q < 0) throw std::invalid_argument(text);
    return {p, q};
  } catch (const std::logic_error&) {
    throw UsageError("bidegree must be two non-negative integers p,q: '" + text + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Largest bidegree total degree accepted without --force.
int degree_limit(std::size_t n) {
  if (n <= 3) return 6;
  if (n <= 5) return 4;
  return 3;
}

void guard(std::size_t n, int total, bool force, const std::string& what) {
  if (!force && total > degree_limit(n))
    throw UsageError(what + " of total degree " + std::to_string(total) + " exceeds the limit " +
                     std::to_string(degree_limit(n)) + " for n=" + std::to_string(n) + " (use --force)");
}

void check_n(std::size_t n) {
  if (n < 1) throw UsageError("--n must be at least 1");
}

std::string fmt_double(double x) {
  std::ostringstream os;
  os << std::setprecision(10) << x;
  return os.str();
}

std::string fmt_estimate(const mc::QuadEstimate& e) {
  std::string s = fmt_double(e.value.real());
  if (e.value.imag() != 0) s += (e.value.imag() < 0 ? " - " : " + ") + fmt_double(std::abs(e.value.imag())) + "i";
  return s + " +/- " + fmt_double(e.stderr_);
}

void print_kv(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t w = 0;
  for (const auto& r : rows) w = std::max(w, r.first.size());
  for (const auto& [k, v] : rows) out << std::left << std::setw(static_cast<int>(w) + 2) << k << v << "\n";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

struct Common {
  std::string format;
  std::string output;
  unsigned threads = 0;
  bool force = false;
};

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args);

 private:
  void add_common(CLI::App* app, bool json_default);
  Format format() const;

  BiPoly read_poly(std::size_t n) const;
  PatternBox read_pattern(const std::string& text, int maxdeg) const;

  int cmd_dim();
  int cmd_basis();
  int cmd_zonal();
  int cmd_project();
  int cmd_support();
  int cmd_product();
  int cmd_pattern_closure();
  int cmd_pattern_classify();
  int cmd_pattern_mclosure();
  int cmd_algebra_check();
  int cmd_mc();
  int cmd_verify();

  void emit_json(const json& j) { sink() << j.dump(2) << "\n"; }
  std::ostream& sink() { return file_ ? *file_ : out_; }

  std::ostream& out_;
  std::ostream& err_;
  std::unique_ptr<std::ofstream> file_;
  std::map<CLI::App*, bool> json_default_;
  CLI::App* active_ = nullptr;

  Common common_;
  std::size_t n_ = 0;
  int p_ = 0, q_ = 0;
  std::string point_;
  std::string poly_text_, poly_file_;
  std::string bidegree_;
  std::string left_, right_;
  std::string rule_ = "minus";
  std::optional<int> maxdeg_;
  bool no_witnesses_ = false;
  std::string pattern_, family_;
  std::string moebius_;
  std::string ladder_;
  std::uint64_t seed_ = 42;
  std::size_t samples_ = 100000;
  std::string suite_;
};

void Runner::add_common(CLI::App* app, bool json_default) {
  json_default_[app] = json_default;
  app->add_option("--format", common_.format, "Output format")->check(CLI::IsMember({"json", "table", "csv"}));
  app->add_option("--output", common_.output, "Write the result to a file");
  app->add_option("--threads", common_.threads, "Worker threads (default: HARMALG_THREADS or all cores)");
}

Format Runner::format() const {
  if (common_.format == "json") return Format::Json;
  if (common_.format == "table") return Format::Table;
  if (common_.format == "csv") return Format::Csv;
  return json_default_.at(active_) ? Format::Json : Format::Table;
}

BiPoly Runner::read_poly(std::size_t n) const {
  if (!poly_file_.empty()) return parse_poly(read_file(poly_file_), n);
  if (poly_text_.empty()) throw UsageError("a polynomial is required (--poly or --poly-file)");
  return parse_poly(poly_text_, n);
}

PatternBox Runner::read_pattern(const std::string& text, int maxdeg) const {
  if (maxdeg < 0) throw UsageError("--maxdeg must be non-negative");
  const BidegreeSet pts = parse_points(text);
  for (const auto& b : pts)
    if (b.total() > maxdeg)
      throw UsageError("point (" + std::to_string(b.p) + "," + std::to_string(b.q) + ") lies outside maxdeg " +
                       std::to_string(maxdeg));
  return PatternBox(maxdeg, pts);
}

int Runner::run(const std::vector<std::string>& args) {
  CLI::App app{"Exact bidegree spherical harmonics on the unit sphere of C^n", "harmalg"};
  app.require_subcommand(1);

  auto need_n = [this](CLI::App* c) { c->add_option("--n", n_, "Complex dimension")->required(); };
  auto need_pq = [this](CLI::App* c) {
    c->add_option("--p", p_, "Holomorphic degree")->required()->check(CLI::NonNegativeNumber);
    c->add_option("--q", q_, "Antiholomorphic degree")->required()->check(CLI::NonNegativeNumber);
  };
  auto poly_opts = [this](CLI::App* c) {
    auto* a = c->add_option("--poly", poly_text_, "Polynomial, e.g. \"z1*w1 - 1/2\"");
    auto* b = c->add_option("--poly-file", poly_file_, "File holding the polynomial text");
    a->excludes(b);
  };
  auto force_opt = [this](CLI::App* c) { c->add_flag("--force", common_.force, "Skip the degree guard"); };

  std::map<CLI::App*, int (Runner::*)()> handlers;

  auto* dim = app.add_subcommand("dim", "Dimension of H(p,q)");
  need_n(dim), need_pq(dim), force_opt(dim), add_common(dim, false);
  handlers[dim] = &Runner::cmd_dim;

  auto* basis = app.add_subcommand("basis", "Basis and Gram matrix of H(p,q)");
  need_n(basis), need_pq(basis), force_opt(basis), add_common(basis, true);
  handlers[basis] = &Runner::cmd_basis;

  auto* zonal = app.add_subcommand("zonal", "Reproducing kernel of H(p,q) at a sphere point");
  need_n(zonal), need_pq(zonal), force_opt(zonal), add_common(zonal, true);
  zonal->add_option("--point", point_, "Comma-separated Gaussian rationals, e.g. \"(1/3+2/3i),2/3\"")->required();
  handlers[zonal] = &Runner::cmd_zonal;

  auto* project = app.add_subcommand("project", "Bidegree components of a polynomial");
  need_n(project), poly_opts(project), force_opt(project), add_common(project, true);
  project->add_option("--bidegree", bidegree_, "Single target p,q (default: every component)");
  handlers[project] = &Runner::cmd_project;

  auto* support = app.add_subcommand("support", "Bidegree support of a polynomial");
  need_n(support), poly_opts(support), force_opt(support), add_common(support, false);
  support->add_option("--maxdeg", maxdeg_, "Only probe bidegrees up to this total degree");
  handlers[support] = &Runner::cmd_support;

  auto* product = app.add_subcommand("product", "Support of the span of H(left)*H(right)");
  need_n(product), force_opt(product), add_common(product, true);
  product->add_option("--left", left_, "p,q")->required();
  product->add_option("--right", right_, "r,s")->required();
  product->add_option("--rule", rule_, "Prediction rule")->check(CLI::IsMember({"minus", "plus"}));
  product->add_option("--maxdeg", maxdeg_, "Only probe bidegrees up to this total degree");
  product->add_flag("--no-witnesses", no_witnesses_, "Omit witness components");
  handlers[product] = &Runner::cmd_product;

  auto* closure = app.add_subcommand("pattern-closure", "Smallest closed pattern containing the seed");
  closure->add_option("--seed", pattern_, "Points \"(p,q);(p,q)\"")->required();
  closure->add_option("--maxdeg", maxdeg_, "Box degree")->required();
  closure->add_option("--rule", rule_, "Combination rule")->check(CLI::IsMember({"minus", "plus"}));
  add_common(closure, false);
  handlers[closure] = &Runner::cmd_pattern_closure;

  auto* classify = app.add_subcommand("pattern-classify", "Identify the family of a closed pattern");
  classify->add_option("--pattern", pattern_, "Points \"(p,q);(p,q)\"")->required();
  classify->add_option("--maxdeg", maxdeg_, "Box degree")->required();
  add_common(classify, true);
  handlers[classify] = &Runner::cmd_pattern_classify;

  auto* mclosure = app.add_subcommand("pattern-mclosure", "Closure under the Moebius ladder");
  mclosure->add_option("--seed", pattern_, "Points \"(p,q);(p,q)\"")->required();
  mclosure->add_option("--maxdeg", maxdeg_, "Box degree")->required();
  add_common(mclosure, false);
  handlers[mclosure] = &Runner::cmd_pattern_mclosure;

  auto* algebra = app.add_subcommand("algebra-check", "Exact test whether a pattern spans an algebra");
  need_n(algebra), force_opt(algebra), add_common(algebra, true);
  auto* pat = algebra->add_option("--pattern", pattern_, "Points \"(p,q);(p,q)\"");
  auto* fam = algebra->add_option("--family", family_, "Family literal, e.g. Gpq(2,1) or plurih");
  pat->excludes(fam);
  algebra->add_option("--maxdeg", maxdeg_, "Box degree")->required();
  handlers[algebra] = &Runner::cmd_algebra_check;

  auto* mcc = app.add_subcommand("mc", "Monte Carlo integrals, projections and ladder evidence");
  need_n(mcc), poly_opts(mcc), add_common(mcc, true);
  mcc->add_option("--seed", seed_, "Random seed");
  mcc->add_option("--samples", samples_, "Number of samples")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 40));
  mcc->add_option("--bidegree", bidegree_, "Estimate the (p,q) component at --point instead of the integral");
  mcc->add_option("--point", point_, "Evaluation point for --bidegree (default e1)");
  mcc->add_option("--moebius", moebius_, "Compose with the ball automorphism exchanging 0 and this point");
  mcc->add_option("--ladder", ladder_, "Ladder evidence for H(p,q) under --moebius");
  handlers[mcc] = &Runner::cmd_mc;

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite_, "exact-core | harmonics | patterns | product-span | mc | all")->required();
  verify->add_option("--n", n_, "Dimension (suite default when omitted)");
  verify->add_option("--maxdeg", maxdeg_, "Degree bound (suite default when omitted)");
  verify->add_option("--seed", seed_, "Random seed");
  verify->add_option("--samples", samples_, "Monte Carlo samples");
  verify->add_option("--rule", rule_, "Combination rule")->check(CLI::IsMember({"minus", "plus"}));
  add_common(verify, false);
  handlers[verify] = &Runner::cmd_verify;

  std::vector<std::string> storage{"harmalg"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out_, err_);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out_, err_);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out_, err_);
    return kUsageError;
  }

  for (const auto& [sub, handler] : handlers) {
    if (!sub->parsed()) continue;
    active_ = sub;
    try {
      if (!common_.output.empty()) {
        file_ = std::make_unique<std::ofstream>(common_.output);
        if (!*file_) throw UsageError("cannot write " + common_.output);
      }
      return (this->*handler)();
    } catch (const UsageError& e) {
      err_ << "error: " << e.what() << "\n";
    } catch (const ParseError& e) {
      err_ << "parse error: " << e.what() << "\n";
    } catch (const verify::UnknownSuite& e) {
      err_ << "error: " << e.what() << "\n";
    } catch (const ClassificationError& e) {
      err_ << "not classified: " << e.what() << "\n";
      return kVerificationFailure;
    } catch (const std::invalid_argument& e) {
      err_ << "error: " << e.what() << "\n";
    } catch (const std::domain_error& e) {
      err_ << "error: " << e.what() << "\n";
    }
    return kUsageError;
  }
  return kUsageError;
}

int Runner::cmd_dim() {
  check_n(n_);
  guard(n_, p_ + q_, common_.force, "bidegree");
  const SphereContext ctx(n_);
  const std::size_t d = ctx.space({p_, q_})->dim();
  switch (format()) {
    case Format::Json:
      emit_json({{"n", n_}, {"bidegree", io::to_json(Bidegree{p_, q_})}, {"dim", d}});
      break;
    case Format::Table:
      sink() << d << "\n";
      break;
    case Format::Csv:
      sink() << "n,p,q,dim\n" << n_ << "," << p_ << "," << q_ << "," << d << "\n";
      break;
  }
  return kSuccess;
}

int Runner::cmd_basis() {
  check_n(n_);
  guard(n_, p_ + q_, common_.force, "bidegree");
  const SphereContext ctx(n_);
  const auto h = ctx.space({p_, q_});
  switch (format()) {
    case Format::Json:
      emit_json(io::to_json(*h));
      break;
    case Format::Table:
      for (std::size_t i = 0; i < h->dim(); ++i) sink() << "[" << i << "] " << render_poly(h->basis()[i]) << "\n";
      break;
    case Format::Csv:
      sink() << "index,poly,norm_squared\n";
      for (std::size_t i = 0; i < h->dim(); ++i)
        sink() << i << "," << csv_field(render_poly(h->basis()[i])) << "," << to_string(h->gram()(i, i)) << "\n";
      break;
  }
  return kSuccess;
}

int Runner::cmd_zonal() {
  check_n(n_);
  guard(n_, p_ + q_, common_.force, "bidegree");
  auto coords = parse_gauss_list(point_);
  if (coords.size() != n_) throw UsageError("--point has " + std::to_string(coords.size()) + " coordinates, expected " +
                                            std::to_string(n_));
  const SpherePoint z(std::move(coords));
  const SphereContext ctx(n_);
  const auto k = zonal_kernel(ctx.space({p_, q_}), z);
  switch (format()) {
    case Format::Json:
      emit_json(io::to_json(k));
      break;
    case Format::Table:
      print_kv(sink(), {{"kernel", render_poly(k.kernel)}, {"K(z)", to_string(k.kernel.evaluate(z.coords()))}});
      break;
    case Format::Csv:
      sink() << "kernel,value_at_point\n"
             << csv_field(render_poly(k.kernel)) << "," << csv_field(to_string(k.kernel.evaluate(z.coords()))) << "\n";
      break;
  }
  return kSuccess;
}

int Runner::cmd_project() {
  check_n(n_);
  const BiPoly f = read_poly(n_);
  guard(n_, f.total_degree(), common_.force, "polynomial");
  const SphereContext ctx(n_);
  std::vector<std::pair<Bidegree, BiPoly>> parts;
  if (!bidegree_.empty()) {
    const Bidegree bd = parse_bidegree(bidegree_);
    parts.emplace_back(bd, project_bidegree(ctx, f, bd));
  } else {
    for (const auto& bd : bidegree_support(ctx, f)) parts.emplace_back(bd, project_bidegree(ctx, f, bd));
  }
  switch (format()) {
    case Format::Json: {
      json comps = json::array();
      for (const auto& [bd, g] : parts) comps.push_back({{"bidegree", io::to_json(bd)}, {"component", io::to_json(g)}});
      emit_json({{"poly", io::to_json(f)}, {"components", comps}});
      break;
    }
    case Format::Table:
      for (const auto& [bd, g] : parts) sink() << render_points({bd}) << "  " << render_poly(g) << "\n";
      break;
    case Format::Csv:
      sink() << "p,q,component\n";
      for (const auto& [bd, g] : parts) sink() << bd.p << "," << bd.q << "," << csv_field(render_poly(g)) << "\n";
      break;
  }
  return kSuccess;
}

int Runner::cmd_support() {
  check_n(n_);
  const BiPoly f = read_poly(n_);
  guard(n_, f.total_degree(), common_.force, "polynomial");
  const SphereContext ctx(n_);
  const BidegreeSet s = bidegree_support(ctx, f, maxdeg_);
  switch (format()) {
    case Format::Json:
      emit_json({{"poly", io::to_json(f)}, {"support", io::to_json(s)}});
      break;
    case Format::Table:
      sink() << render_points(s) << "\n";
      break;
    case Format::Csv:
      sink() << "p,q\n";
      for (const auto& b : s) sink() << b.p << "," << b.q << "\n";
      break;
  }
  return kSuccess;
}

int Runner::cmd_product() {
  check_n(n_);
  const Bidegree a = parse_bidegree(left_), b = parse_bidegree(right_);
  guard(n_, std::max(a.total(), b.total()), common_.force, "bidegree");
  const SphereContext ctx(n_);
  ProductOptions po;
  po.rule = rule_ == "plus" ? CombineRule::Plus : CombineRule::Minus;
  po.max_total = maxdeg_;
  po.witnesses = !no_witnesses_;
  const auto rep = product_space_support(ctx, a, b, po);
  switch (format()) {
    case Format::Json:
      emit_json(io::to_json(rep));
      break;
    case Format::Table:
      print_kv(sink(), {{"n", std::to_string(rep.n)},
                        {"left", render_points({a})},
                        {"right", render_points({b})},
                        {"rule", rule_},
                        {"support", render_points(rep.support)},
                        {"predicted", render_points(rep.predicted)},
                        {"match", bool_str(rep.match)},
                        {"missing", render_points(rep.missing())},
                        {"extra", render_points(rep.extra())},
                        {"products_examined", std::to_string(rep.products_examined)}});
      break;
    case Format::Csv:
      sink() << "p,q,predicted,supported\n";
      {
        BidegreeSet all = rep.support;
        all.insert(rep.predicted.begin(), rep.predicted.end());
        for (const auto& x : all)
          sink() << x.p << "," << x.q << "," << bool_str(rep.predicted.count(x)) << ","
                 << bool_str(rep.support.count(x)) << "\n";
      }
      break;
  }
  return kSuccess;
}

int Runner::cmd_pattern_closure() {
  const PatternBox seed = read_pattern(pattern_, *maxdeg_);
  const PatternBox cl = closure_box(seed, rule_ == "plus" ? CombineRule::Plus : CombineRule::Minus);
  switch (format()) {
    case Format::Json:
      emit_json({{"seed", io::to_json(seed)}, {"rule", rule_}, {"closure", io::to_json(cl)}});
      break;
    case Format::Table:
      sink() << render_points(cl.members()) << "\n";
      break;
    case Format::Csv:
      sink() << "p,q\n";
      for (const auto& b : cl.members()) sink() << b.p << "," << b.q << "\n";
      break;
  }
  return kSuccess;
}

int Runner::cmd_pattern_classify() {
  const PatternBox box = read_pattern(pattern_, *maxdeg_);
  const auto res = classify_pattern(box);
  switch (format()) {
    case Format::Json:
      emit_json(io::to_json(res));
      break;
    case Format::Table: {
      std::vector<std::pair<std::string, std::string>> rows{{"family", to_string(res.family)},
                                                            {"mirrored", bool_str(res.mirrored)},
                                                            {"verified_box", std::to_string(res.verified_box)}};
      for (const auto& note : res.notes) rows.emplace_back("note", note);
      print_kv(sink(), rows);
      break;
    }
    case Format::Csv:
      sink() << "family,mirrored,verified_box\n"
             << csv_field(to_string(res.family)) << "," << bool_str(res.mirrored) << "," << res.verified_box << "\n";
      break;
  }
  return kSuccess;
}

int Runner::cmd_pattern_mclosure() {
  const PatternBox seed = read_pattern(pattern_, *maxdeg_);
  const PatternBox cl = m_ladder_closure(seed);
  const std::string space = *maxdeg_ >= 2 ? to_string(six_space_classify(cl)) : "undetermined";
  switch (format()) {
    case Format::Json:
      emit_json({{"seed", io::to_json(seed)}, {"closure", io::to_json(cl)}, {"space", space}});
      break;
    case Format::Table:
      print_kv(sink(), {{"closure", render_points(cl.members())}, {"space", space}});
      break;
    case Format::Csv:
      sink() << "space,closure\n" << space << "," << csv_field(render_points(cl.members())) << "\n";
      break;
  }
  return kSuccess;
}

int Runner::cmd_algebra_check() {
  check_n(n_);
  guard(n_, *maxdeg_, common_.force, "box");
  PatternBox box;
  if (!family_.empty()) box = truncate(parse_family(family_), *maxdeg_);
  else if (!pattern_.empty()) box = read_pattern(pattern_, *maxdeg_);
  else throw UsageError("one of --pattern or --family is required");
  const SphereContext ctx(n_);
  const auto eq = cstar_equivalence_check(ctx, box);
  const auto& res = eq.uniform;
  switch (format()) {
    case Format::Json: {
      json j = io::to_json(res);
      j["n"] = n_;
      j["pattern"] = io::to_json(box);
      j["weakstar"] = io::to_json(eq.weakstar);
      j["note"] = eq.note;
      emit_json(j);
      break;
    }
    case Format::Table: {
      std::vector<std::pair<std::string, std::string>> rows{{"is_algebra", bool_str(res.is_algebra)},
                                                            {"pairs_checked", std::to_string(res.pairs_checked)}};
      if (!res.is_algebra) {
        rows.emplace_back("left", render_points({*res.left}));
        rows.emplace_back("right", render_points({*res.right}));
        rows.emplace_back("escaping", render_points({*res.escaping}));
      }
      print_kv(sink(), rows);
      break;
    }
    case Format::Csv:
      sink() << "is_algebra,pairs_checked,left,right,escaping\n" << bool_str(res.is_algebra) << "," << res.pairs_checked;
      if (res.is_algebra) sink() << ",,,\n";
      else
        sink() << "," << csv_field(render_points({*res.left})) << "," << csv_field(render_points({*res.right})) << ","
               << csv_field(render_points({*res.escaping})) << "\n";
      break;
  }
  return kSuccess;
}

mc::CVector to_cvector(const std::vector<GaussRational>& v) {
  mc::CVector out;
  for (const auto& x : v) out.push_back(x.to_complex());
  return out;
}

int Runner::cmd_mc() {
  check_n(n_);
  const mc::HaarSampler sampler(seed_, n_, common_.threads);
  const SphereContext ctx(n_);
  std::optional<mc::BallAutomorphism> phi;
  if (!moebius_.empty()) {
    const auto a = parse_gauss_list(moebius_);
    if (a.size() != n_) throw UsageError("--moebius needs " + std::to_string(n_) + " coordinates");
    phi.emplace(to_cvector(a));
  }

  if (!ladder_.empty()) {
    const Bidegree src = parse_bidegree(ladder_);
    if (src.p < 1) throw UsageError("--ladder needs p >= 1");
    const auto ev = mc::moebius_ladder_evidence(src, phi ? phi->center() : mc::CVector(n_), ctx, sampler, samples_);
    switch (format()) {
      case Format::Json: {
        json j = io::to_json(ev);
        j["seed"] = seed_;
        j["evidence"] = ev.evidence();
        emit_json(j);
        break;
      }
      case Format::Table:
        for (const auto& e : ev.entries)
          sink() << "basis[" << e.basis_index << "] -> " << render_points({e.target}) << "  " << fmt_estimate(e.estimate)
                 << (e.estimate.is_nonzero() ? "  nonzero" : "") << "\n";
        sink() << "evidence " << bool_str(ev.evidence()) << "\n";
        break;
      case Format::Csv:
        sink() << "basis_index,p,q,re,im,stderr,nonzero\n";
        for (const auto& e : ev.entries)
          sink() << e.basis_index << "," << e.target.p << "," << e.target.q << "," << fmt_double(e.estimate.value.real())
                 << "," << fmt_double(e.estimate.value.imag()) << "," << fmt_double(e.estimate.stderr_) << ","
                 << bool_str(e.estimate.is_nonzero()) << "\n";
        break;
    }
    return kSuccess;
  }

  const BiPoly f = read_poly(n_);
  const mc::SphereFunction g = phi ? mc::compose(f, *phi) : mc::SphereFunction(NumericPoly(f));
  mc::QuadEstimate est;
  std::optional<GaussRational> exact;
  json extra = json::object();
  if (!bidegree_.empty()) {
    const Bidegree bd = parse_bidegree(bidegree_);
    std::optional<SpherePoint> z0;
    if (!point_.empty()) {
      auto coords = parse_gauss_list(point_);
      if (coords.size() != n_) throw UsageError("--point needs " + std::to_string(n_) + " coordinates");
      z0.emplace(std::move(coords));
    }
    est = mc::mc_project(g, bd, ctx, sampler, samples_, z0);
    if (!phi) {
      std::vector<GaussRational> pt = z0 ? z0->coords() : std::vector<GaussRational>(n_);
      if (!z0) pt[0] = 1;
      exact = project_bidegree(ctx, f, bd).evaluate(pt);
    }
    extra["bidegree"] = io::to_json(bd);
  } else {
    est = mc::mc_integrate(g, sampler, samples_);
    if (!phi) exact = integrate(f);
  }
  switch (format()) {
    case Format::Json: {
      json j{{"n", n_}, {"seed", seed_}, {"poly", render_poly(f)}, {"estimate", io::to_json(est)}};
      for (auto& [k, v] : extra.items()) j[k] = v;
      if (exact) {
        j["exact"] = io::to_json(*exact);
        j["agrees"] = est.agrees_with(exact->to_complex());
      }
      j["nonzero"] = est.is_nonzero();
      emit_json(j);
      break;
    }
    case Format::Table: {
      std::vector<std::pair<std::string, std::string>> rows{{"estimate", fmt_estimate(est)},
                                                            {"samples", std::to_string(est.samples)}};
      if (exact) {
        rows.emplace_back("exact", to_string(*exact));
        rows.emplace_back("agrees", bool_str(est.agrees_with(exact->to_complex())));
      }
      rows.emplace_back("nonzero", bool_str(est.is_nonzero()));
      print_kv(sink(), rows);
      break;
    }
    case Format::Csv:
      sink() << "re,im,stderr,samples,exact\n"
             << fmt_double(est.value.real()) << "," << fmt_double(est.value.imag()) << "," << fmt_double(est.stderr_)
             << "," << est.samples << "," << (exact ? csv_field(to_string(*exact)) : "") << "\n";
      break;
  }
  return kSuccess;
}

int Runner::cmd_verify() {
  verify::Options opts;
  if (n_ > 0) opts.n = n_;
  opts.maxdeg = maxdeg_;
  opts.seed = seed_;
  opts.samples = samples_;
  opts.threads = common_.threads;
  opts.rule = rule_ == "plus" ? CombineRule::Plus : CombineRule::Minus;
  if (opts.samples < 2) throw UsageError("--samples must be at least 2");
  const auto reports = verify::run(suite_, opts);
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.passed();
  switch (format()) {
    case Format::Json: {
      json suites = json::array();
      for (const auto& r : reports) {
        json checks = json::array();
        for (const auto& c : r.checks) {
          json j{{"name", c.name}, {"passed", c.passed}, {"cases", c.cases}};
          if (!c.counterexample.empty()) j["counterexample"] = c.counterexample;
          if (!c.detail.empty()) j["detail"] = c.detail;
          checks.push_back(j);
        }
        suites.push_back({{"suite", r.suite}, {"passed", r.passed()}, {"checks", checks}});
      }
      emit_json({{"passed", ok}, {"seed", seed_}, {"suites", suites}});
      break;
    }
    case Format::Table:
      for (const auto& r : reports) {
        sink() << r.suite << "\n";
        for (const auto& c : r.checks) {
          sink() << "  " << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.cases << " cases)";
          if (!c.detail.empty()) sink() << " - " << c.detail;
          sink() << "\n";
          if (!c.passed) sink() << "       counterexample: " << c.counterexample << "\n";
        }
      }
      sink() << (ok ? "PASS" : "FAIL") << "\n";
      break;
    case Format::Csv:
      sink() << "suite,check,passed,cases,counterexample\n";
      for (const auto& r : reports)
        for (const auto& c : r.checks)
          sink() << r.suite << "," << csv_field(c.name) << "," << bool_str(c.passed) << "," << c.cases << ","
                 << csv_field(c.counterexample) << "\n";
      break;
  }
  return ok ? kSuccess : kVerificationFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Runner r(out, err);
  return r.run(args);
}

}  // namespace harmalg::cli
