#include "bergman/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <array>

#include <fmt/format.h>

#include "bergman/errors.hpp"
#include "bergman/hartogs.hpp"
#include "bergman/oracle.hpp"

namespace bergman::cli {

namespace {

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  fail(ErrorKind::ValidationError, fmt::format("{}: {}", path, what));
}

// ---------------------------------------------------------------------------
// Field readers with defaults

int int_or(const Json& j, const char* key, const std::string& path, int fallback, int lo, int hi) {
  if (!j.contains(key)) return fallback;
  const Json& v = j[key];
  if (!v.is_number_integer()) invalid(path + "." + key, "expected an integer");
  const long long x = v.get<long long>();
  if (x < lo || x > hi) invalid(path + "." + key, fmt::format("must lie in [{}, {}]", lo, hi));
  return static_cast<int>(x);
}

double double_or(const Json& j, const char* key, const std::string& path, double fallback) {
  return j.contains(key) ? number_at(j, key, path) : fallback;
}

double positive_or(const Json& j, const char* key, const std::string& path, double fallback) {
  const double x = double_or(j, key, path, fallback);
  if (!(x > 0.0)) invalid(path + "." + key, "must be positive");
  return x;
}

std::optional<Complex> complex_opt(const Json& j, const char* key, const std::string& path) {
  if (!j.contains(key)) return std::nullopt;
  require_keys(j[key], path + "." + key, {"re", "im"});
  return complex_from_json(j[key], path + "." + key);
}

Complex complex_or(const Json& j, const char* key, const std::string& path, Complex fallback) {
  return complex_opt(j, key, path).value_or(fallback);
}

GridSpec grid_from(const Json& j, const char* key, const std::string& path, GridSpec g) {
  if (!j.contains(key)) return g;
  const std::string p = path + "." + key;
  const Json& v = j[key];
  require_keys(v, p, {"lo", "hi", "resolution"});
  g.lo = complex_or(v, "lo", p, g.lo);
  g.hi = complex_or(v, "hi", p, g.hi);
  g.resolution = int_or(v, "resolution", p, g.resolution, 1, 4096);
  try {
    g.validate();
  } catch (const Error& e) {
    invalid(p, e.what());
  }
  return g;
}

Json grid_json(const GridSpec& g) {
  return Json{{"lo", complex_to_json(g.lo)}, {"hi", complex_to_json(g.hi)},
              {"resolution", g.resolution}};
}

ScanOptions scan_from(const Json& j, const std::string& path) {
  ScanOptions s;
  if (!j.contains("scan")) return s;
  const std::string p = path + ".scan";
  const Json& v = j["scan"];
  require_keys(v, p, {"edge_samples", "boundary_margin", "max_subdivision", "residual_tol"});
  s.edge_samples = int_or(v, "edge_samples", p, s.edge_samples, 4, 1 << 16);
  s.boundary_margin = positive_or(v, "boundary_margin", p, s.boundary_margin);
  s.max_subdivision = int_or(v, "max_subdivision", p, s.max_subdivision, 0, 10);
  s.residual_tol = positive_or(v, "residual_tol", p, s.residual_tol);
  return s;
}

Json scan_json(const ScanOptions& s) {
  return Json{{"edge_samples", s.edge_samples},
              {"boundary_margin", s.boundary_margin},
              {"max_subdivision", s.max_subdivision},
              {"residual_tol", s.residual_tol}};
}

void check_j_range(int first, int last, const std::string& path) {
  if (first > last) invalid(path, "j_first must not exceed j_last");
}

// ---------------------------------------------------------------------------
// Params

Params params_from(Command c, const Json& j, const std::string& p) {
  switch (c) {
    case Command::Eval: {
      require_keys(j, p, {"points"});
      EvalParams e;
      if (!j.contains("points") || !j["points"].is_array() || j["points"].empty())
        invalid(p + ".points", "expected a nonempty array of {\"z\", \"w\"}");
      for (std::size_t i = 0; i < j["points"].size(); ++i) {
        const std::string q = fmt::format("{}.points[{}]", p, i);
        const Json& pt = j["points"][i];
        require_keys(pt, q, {"z", "w"});
        const auto z = complex_opt(pt, "z", q), w = complex_opt(pt, "w", q);
        if (!z || !w) invalid(q, "needs both z and w");
        e.points.emplace_back(*z, *w);
      }
      return e;
    }
    case Command::Formula: {
      require_keys(j, p, {"format"});
      FormulaParams f;
      if (j.contains("format")) {
        const Json& v = j["format"];
        if (v == "latex") f.format = FormulaFormat::LaTeX;
        else if (v == "plain") f.format = FormulaFormat::Plain;
        else invalid(p + ".format", "expected \"latex\" or \"plain\"");
      }
      return f;
    }
    case Command::Verify: {
      require_keys(j, p, {"point", "radial_nodes", "angular_nodes", "max_power"});
      VerifyParams v;
      v.point = complex_or(j, "point", p, v.point);
      v.radial_nodes = int_or(j, "radial_nodes", p, v.radial_nodes, 1, 4096);
      v.angular_nodes = int_or(j, "angular_nodes", p, v.angular_nodes, 2, 8192);
      if (v.angular_nodes % 2 != 0) invalid(p + ".angular_nodes", "must be even");
      v.max_power = int_or(j, "max_power", p, v.max_power, 0, 64);
      return v;
    }
    case Command::OracleCompare: {
      require_keys(j, p, {"degree", "pairs", "radius", "seed"});
      OracleParams o;
      o.degree = int_or(j, "degree", p, o.degree, 0, 200);
      o.pairs = int_or(j, "pairs", p, o.pairs, 1, 1000000);
      o.radius = positive_or(j, "radius", p, o.radius);
      if (!(o.radius < 1.0)) invalid(p + ".radius", "must be below 1");
      if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) invalid(p + ".seed", "expected a nonnegative integer");
        o.seed = j["seed"].get<std::uint64_t>();
      }
      return o;
    }
    case Command::Zeros: {
      require_keys(j, p, {"w0", "grid", "w_grid", "scan"});
      ZerosParams z;
      z.w0 = complex_opt(j, "w0", p);
      z.grid = grid_from(j, "grid", p, z.grid);
      z.w_grid = grid_from(j, "w_grid", p, z.w_grid);
      z.scan = scan_from(j, p);
      return z;
    }
    case Command::Ratio: {
      require_keys(j, p, {"z", "direction", "j_first", "j_last"});
      RatioParams r;
      r.z = complex_or(j, "z", p, r.z);
      r.direction = complex_or(j, "direction", p, r.direction);
      if (std::abs(r.direction) == 0.0) invalid(p + ".direction", "must be nonzero");
      r.j_first = int_or(j, "j_first", p, r.j_first, 1, 50);
      r.j_last = int_or(j, "j_last", p, r.j_last, 1, 50);
      check_j_range(r.j_first, r.j_last, p);
      return r;
    }
    case Command::Track: {
      require_keys(j, p, {"z0", "w0", "direction", "j_first", "j_last", "grid", "w_grid", "track"});
      TrackParams t;
      t.z0 = complex_opt(j, "z0", p);
      t.w0 = complex_opt(j, "w0", p);
      if (t.z0.has_value() != t.w0.has_value()) invalid(p, "give both z0 and w0 or neither");
      t.direction = complex_opt(j, "direction", p);
      if (t.direction && std::abs(*t.direction) == 0.0) invalid(p + ".direction", "must be nonzero");
      t.j_first = int_or(j, "j_first", p, t.j_first, 1, 50);
      t.j_last = int_or(j, "j_last", p, t.j_last, 1, 50);
      check_j_range(t.j_first, t.j_last, p);
      t.grid = grid_from(j, "grid", p, t.grid);
      t.w_grid = grid_from(j, "w_grid", p, t.w_grid);
      if (j.contains("track")) {
        const std::string q = p + ".track";
        const Json& v = j["track"];
        require_keys(v, q, {"initial_radius", "circle_samples", "separation_tol"});
        t.track.initial_radius = double_or(v, "initial_radius", q, t.track.initial_radius);
        if (t.track.initial_radius < 0.0) invalid(q + ".initial_radius", "must be nonnegative");
        t.track.circle_samples = int_or(v, "circle_samples", q, t.track.circle_samples, 8, 1 << 16);
        t.track.separation_tol = positive_or(v, "separation_tol", q, t.track.separation_tol);
      }
      return t;
    }
    case Command::Hartogs: {
      require_keys(j, p, {"grid", "w_grid", "scan"});
      HartogsParams h;
      h.grid = grid_from(j, "grid", p, h.grid);
      h.w_grid = grid_from(j, "w_grid", p, h.w_grid);
      h.scan = scan_from(j, p);
      return h;
    }
  }
  invalid(p, "unknown command");
}

Json params_json(const Params& params) {
  return std::visit(
      [](const auto& q) -> Json {
        using T = std::decay_t<decltype(q)>;
        Json j = Json::object();
        if constexpr (std::is_same_v<T, EvalParams>) {
          j["points"] = Json::array();
          for (const auto& [z, w] : q.points)
            j["points"].push_back(Json{{"z", complex_to_json(z)}, {"w", complex_to_json(w)}});
        } else if constexpr (std::is_same_v<T, FormulaParams>) {
          j["format"] = q.format == FormulaFormat::LaTeX ? "latex" : "plain";
        } else if constexpr (std::is_same_v<T, VerifyParams>) {
          j["point"] = complex_to_json(q.point);
          j["radial_nodes"] = q.radial_nodes;
          j["angular_nodes"] = q.angular_nodes;
          j["max_power"] = q.max_power;
        } else if constexpr (std::is_same_v<T, OracleParams>) {
          j["degree"] = q.degree;
          j["pairs"] = q.pairs;
          j["radius"] = q.radius;
          j["seed"] = q.seed;
        } else if constexpr (std::is_same_v<T, ZerosParams>) {
          if (q.w0) j["w0"] = complex_to_json(*q.w0);
          j["grid"] = grid_json(q.grid);
          j["w_grid"] = grid_json(q.w_grid);
          j["scan"] = scan_json(q.scan);
        } else if constexpr (std::is_same_v<T, RatioParams>) {
          j["z"] = complex_to_json(q.z);
          j["direction"] = complex_to_json(q.direction);
          j["j_first"] = q.j_first;
          j["j_last"] = q.j_last;
        } else if constexpr (std::is_same_v<T, TrackParams>) {
          if (q.z0) j["z0"] = complex_to_json(*q.z0);
          if (q.w0) j["w0"] = complex_to_json(*q.w0);
          if (q.direction) j["direction"] = complex_to_json(*q.direction);
          j["j_first"] = q.j_first;
          j["j_last"] = q.j_last;
          j["grid"] = grid_json(q.grid);
          j["w_grid"] = grid_json(q.w_grid);
          j["track"] = Json{{"initial_radius", q.track.initial_radius},
                            {"circle_samples", q.track.circle_samples},
                            {"separation_tol", q.track.separation_tol}};
        } else {
          j["grid"] = grid_json(q.grid);
          j["w_grid"] = grid_json(q.w_grid);
          j["scan"] = scan_json(q.scan);
        }
        return j;
      },
      params);
}

// ---------------------------------------------------------------------------
// Output

std::string num(double x) { return fmt::format("{:.10g}", x); }
std::string csv(double x) { return fmt::format("{:.17g}", x); }

std::string human(Complex z) {
  const double im = z.imag();
  return fmt::format("{} {} {}i", num(z.real()), std::signbit(im) ? "-" : "+", num(std::abs(im)));
}

std::string point(Complex z) { return fmt::format("({}, {})", num(z.real()), num(z.imag())); }

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : width_(header.size()) { add(header); }

  void row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    for (double v : values) cells.push_back(csv(v));
    add(cells);
  }
  void row(std::vector<std::string> cells) { add(cells); }

  const std::string& text() const { return text_; }

 private:
  void add(const std::vector<std::string>& cells) {
    if (cells.size() != width_) fail(ErrorKind::InvalidArgument, "CSV row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) text_ += (i ? "," : "") + cells[i];
    text_ += '\n';
  }
  std::size_t width_;
  std::string text_;
};

class Outputs {
 public:
  explicit Outputs(const RunOptions& o) : opts_(o) {
    if (opts_.out_dir) std::filesystem::create_directories(*opts_.out_dir);
  }
  bool enabled() const { return opts_.out_dir.has_value(); }
  bool svg() const { return opts_.svg && enabled(); }

  void write(const std::string& name, const std::string& content) const {
    if (!enabled()) return;
    const auto path = std::filesystem::path(*opts_.out_dir) / name;
    std::ofstream f(path, std::ios::binary);
    f << content;
    if (!f) fail(ErrorKind::InvalidArgument, fmt::format("cannot write {}", path.string()));
  }

 private:
  RunOptions opts_;
};

void witness_rows(CsvTable& t, const std::vector<ZeroWitness>& ws) {
  for (const auto& w : ws)
    t.row({csv(w.z.real()), csv(w.z.imag()), csv(w.w.real()), csv(w.w.imag()), csv(w.residual),
           std::to_string(w.winding), std::to_string(w.order)});
}

CsvTable witness_table() {
  return CsvTable({"re_z", "im_z", "re_w", "im_w", "residual", "winding", "order"});
}

// Heatmap of log10 |K(z, w0)| over the grid rectangle, witnesses marked.
std::string heatmap_svg(const KernelExpr& k, Complex w0, const GridSpec& g,
                        const std::vector<ZeroWitness>& witnesses) {
  constexpr int n = 128, px = 4;
  const double dx = (g.hi.real() - g.lo.real()) / n, dy = (g.hi.imag() - g.lo.imag()) / n;
  std::vector<double> v(static_cast<std::size_t>(n) * n, std::numeric_limits<double>::quiet_NaN());
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const Complex z(g.lo.real() + (i + 0.5) * dx, g.lo.imag() + (j + 0.5) * dy);
      if (!k.domain().contains(z) || k.domain().depth(z) < 1e-3) continue;
      const double a = std::abs(k(z, w0));
      const double l = std::log10(std::max(a, 1e-300));
      v[static_cast<std::size_t>(j) * n + i] = l;
      lo = std::min(lo, l);
      hi = std::max(hi, l);
    }
  // Five-stop dark-blue to yellow ramp.
  static constexpr std::array<std::array<double, 3>, 5> stops{
      {{68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};
  auto color = [&](double l) {
    const double t = hi > lo ? std::clamp((l - lo) / (hi - lo), 0.0, 1.0) : 0.5;
    const double s = t * 4.0;
    const int a = std::min(3, static_cast<int>(s));
    const double f = s - a;
    std::array<int, 3> c{};
    for (int q = 0; q < 3; ++q)
      c[q] = static_cast<int>(std::lround(stops[a][q] + f * (stops[a + 1][q] - stops[a][q])));
    return fmt::format("#{:02x}{:02x}{:02x}", c[0], c[1], c[2]);
  };
  std::string s = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" "
      "viewBox=\"0 0 {0} {0}\">\n<title>log10 |K(z, w0)|, w0 = {1}</title>\n",
      n * px, point(w0));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double l = v[static_cast<std::size_t>(j) * n + i];
      if (std::isnan(l)) continue;
      s += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>\n",
                       i * px, (n - 1 - j) * px, px, px, color(l));
    }
  for (const auto& w : witnesses) {
    const double x = (w.z.real() - g.lo.real()) / dx * px;
    const double y = (n - (w.z.imag() - g.lo.imag()) / dy) * px;
    s += fmt::format(
        "<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"6\" fill=\"none\" stroke=\"red\" "
        "stroke-width=\"2\"/>\n",
        x, y);
  }
  s += fmt::format("<text x=\"4\" y=\"14\" font-size=\"12\" fill=\"white\">log10|K| in [{:.3g}, "
                   "{:.3g}]</text>\n</svg>\n",
                   lo, hi);
  return s;
}

// ---------------------------------------------------------------------------
// Commands

void run_eval(const RunConfig& c, const EvalParams& p, const Outputs& io, std::ostream& out) {
  const auto k = weighted_kernel(c.domain, c.weight, c.mode);
  CsvTable t({"re_z", "im_z", "re_w", "im_w", "re_k", "im_k"});
  for (const auto& [z, w] : p.points) {
    const Complex v = k(z, w);
    out << "K(" << point(z) << ", " << point(w) << ") = " << human(v) << "\n";
    t.row({z.real(), z.imag(), w.real(), w.imag(), v.real(), v.imag()});
  }
  io.write("eval.csv", t.text());
}

void run_formula(const RunConfig& c, const FormulaParams& p, const Outputs& io,
                 std::ostream& out) {
  const auto k = weighted_kernel(c.domain, c.weight, c.mode);
  const std::string f = to_formula(k, p.format);
  out << f << "\n";
  io.write(p.format == FormulaFormat::LaTeX ? "formula.tex" : "formula.txt", f + "\n");
}

void run_verify(const RunConfig& c, const VerifyParams& p, const Outputs& io, std::ostream& out) {
  const auto k = weighted_kernel(c.domain, c.weight, c.mode);
  std::vector<Polynomial> fs;
  for (int n = 0; n <= p.max_power; ++n) fs.push_back(Polynomial::monomial(n));
  const auto res = verify_reproducing(k, c.weight, fs, {p.radial_nodes, p.angular_nodes}, p.point);
  CsvTable t({"power", "residual"});
  out << "reproducing residuals at " << point(p.point) << " (" << p.radial_nodes << " x "
      << p.angular_nodes << " rule)\n";
  for (std::size_t n = 0; n < res.size(); ++n) {
    out << "  f = z^" << n << ": " << num(res[n]) << "\n";
    t.row({std::to_string(n), csv(res[n])});
  }
  io.write("verify.csv", t.text());
}

void run_oracle(const RunConfig& c, const OracleParams& p, const Outputs& io, std::ostream& out) {
  const auto k = weighted_kernel(c.domain, c.weight, c.mode);
  const auto g = monomial_moments(c.domain, c.weight, p.degree);
  const GramKernel gk(g);
  const auto pairs = sample_pairs(c.domain, p.radius, p.pairs, p.seed);
  CsvTable t({"re_z", "im_z", "re_w", "im_w", "re_k", "im_k", "re_oracle", "im_oracle",
              "rel_error"});
  double worst = 0.0;
  for (const auto& [z, w] : pairs) {
    const Complex a = k(z, w), b = gk(z, w);
    const double e = std::abs(a - b) / std::abs(b);
    worst = std::max(worst, e);
    t.row({z.real(), z.imag(), w.real(), w.imag(), a.real(), a.imag(), b.real(), b.imag(), e});
  }
  out << "pairs: " << p.pairs << " (seed " << p.seed << ", |z|, |w| <= " << num(p.radius) << ")\n"
      << "degree: " << p.degree << "\n"
      << "max relative error: " << num(worst) << "\n"
      << "scaled Gram condition: " << num(gk.condition()) << "\n"
      << "min eigenvalue / trace: " << num(gk.min_eigenvalue_relative()) << "\n";
  if (g.quadrature_fallback) out << "quadrature moments, refinement change: " << num(g.quadrature_error) << "\n";
  io.write("oracle.csv", t.text());
}

void run_zeros(const RunConfig& c, const ZerosParams& p, const Outputs& io, std::ostream& out) {
  const auto k = weighted_kernel(c.domain, c.weight, c.mode);
  std::vector<ZeroWitness> ws;
  Complex w0;
  if (p.w0) {
    w0 = *p.w0;
    const auto scan = scan_slice_zeros(k, w0, p.grid, p.scan);
    ws = scan.witnesses;
    std::size_t unresolved = 0;
    for (const auto& s : scan.skipped) unresolved += s.reason != ErrorKind::BoundaryTooClose;
    out << "slice w0 = " << point(w0) << ": " << scan.cells_scanned << " cells, "
        << ws.size() << " certified zeros, " << scan.skipped.size() << " cells skipped ("
        << unresolved << " unresolved)\n";
  } else {
    const auto st = lu_qikeng_status(k, p.grid, p.w_grid, p.scan);
    out << "searched " << st.slices_scanned << " slices at resolution " << st.resolution << ": "
        << (st.zero_found ? "zero found" : "no zero found (resolution-relative)") << "\n";
    if (st.witness) {
      ws.push_back(*st.witness);
      w0 = st.witness->w;
    }
  }
  for (const auto& w : ws)
    out << "  z = " << point(w.z) << "  w = " << point(w.w) << "  residual " << num(w.residual)
        << "  scale " << num(w.scale) << "  winding " << w.winding << "  order " << w.order
        << "\n";
  auto t = witness_table();
  witness_rows(t, ws);
  io.write("zeros.csv", t.text());
  if (io.svg() && (p.w0 || !ws.empty())) io.write("zeros.svg", heatmap_svg(k, w0, p.grid, ws));
}

void run_ratio(const RunConfig& c, const RatioParams& p, const Outputs& io, std::ostream& out) {
  const auto k = weighted_kernel(c.domain, c.weight, c.mode);
  const auto tr = boundary_ratio(k, p.z, radial_centers(p.direction, p.j_first, p.j_last));
  CsvTable t({"j", "re_c", "im_c", "boundary_distance", "ratio"});
  out << "|K(z, c_j)| / sqrt(K(c_j, c_j)) at z = " << point(p.z) << "\n";
  for (std::size_t i = 0; i < tr.values.size(); ++i) {
    const int j = p.j_first + static_cast<int>(i);
    out << "  j = " << j << "  dist " << num(tr.boundary_distance[i]) << "  ratio "
        << num(tr.values[i]) << "\n";
    t.row({std::to_string(j), csv(tr.centers[i].real()), csv(tr.centers[i].imag()),
           csv(tr.boundary_distance[i]), csv(tr.values[i])});
  }
  out << "decays: " << (tr.decays() ? "yes" : "no") << "\n";
  io.write("ratio.csv", t.text());
}

void run_track(const RunConfig& c, const TrackParams& p, const Outputs& io, std::ostream& out) {
  const auto k = weighted_kernel(c.domain, c.weight, c.mode);
  ZeroWitness w;
  if (p.z0) {
    w = refine_zero(k, *p.z0, *p.w0);
  } else {
    const auto st = lu_qikeng_status(k, p.grid, p.w_grid);
    if (!st.witness) fail(ErrorKind::NotAZero, "no slice zero found to track");
    w = *st.witness;
  }
  const Complex dir = p.direction.value_or(Complex(0.0, 1.0) * w.z / std::abs(w.z));
  const auto centers = radial_centers(dir, p.j_first, p.j_last);
  const auto res = track_zero_near_boundary(k, w, centers, p.track);
  out << "tracking z0 = " << point(w.z) << " on the slice w0 = " << point(w.w) << "\n";
  CsvTable t({"j", "re_c", "im_c", "re_z1", "im_z1", "distance", "radius", "alpha", "min_g"});
  for (const auto& s : res.steps) {
    const int j = p.j_first + s.index;
    out << "  j = " << j << "  z1 = " << point(s.z1) << "  |z1 - z0| = " << num(s.distance)
        << "  radius " << num(s.radius) << "\n";
    t.row({std::to_string(j), csv(s.c.real()), csv(s.c.imag()), csv(s.z1.real()),
           csv(s.z1.imag()), csv(s.distance), csv(s.radius), csv(s.alpha), csv(s.min_g)});
  }
  for (const auto& [i, why] : res.deferred)
    out << "  j = " << p.j_first + i << " deferred: " << why << "\n";
  io.write("track.csv", t.text());
}

void run_hartogs(const RunConfig& c, const HartogsParams& p, const Outputs& io,
                 std::ostream& out) {
  const auto h = lift(c.domain, c.weight);
  const auto cert = certify_non_lu_qikeng(h, p.grid, p.w_grid, p.scan);
  const std::string json = cert.to_json(h);
  out << (cert.certified ? "certified: the Hartogs domain is not Lu Qi-keng"
                         : "inconclusive at this resolution")
      << "\n"
      << json << "\n";
  io.write("certificate.json", json + "\n");
  if (cert.witness) {
    auto t = witness_table();
    witness_rows(t, {*cert.witness});
    io.write("zeros.csv", t.text());
  }
}

}  // namespace

// ---------------------------------------------------------------------------

std::string command_name(Command c) {
  switch (c) {
    case Command::Eval: return "eval";
    case Command::Formula: return "formula";
    case Command::Verify: return "verify";
    case Command::OracleCompare: return "oracle_compare";
    case Command::Zeros: return "zeros";
    case Command::Ratio: return "ratio";
    case Command::Track: return "track";
    case Command::Hartogs: return "hartogs";
  }
  return "?";
}

std::optional<Command> parse_command(const std::string& s) {
  for (auto c : {Command::Eval, Command::Formula, Command::Verify, Command::OracleCompare,
                 Command::Zeros, Command::Ratio, Command::Track, Command::Hartogs})
    if (s == command_name(c)) return c;
  if (s == "oracle-compare") return Command::OracleCompare;
  return std::nullopt;
}

RunConfig parse_config(const Json& j) {
  require_keys(j, "config", {"command", "domain", "weight", "profile", "mode", "params"});
  RunConfig c;
  if (!j.contains("command") || !j["command"].is_string())
    invalid("config.command", "expected a command name");
  const auto cmd = parse_command(j["command"].get<std::string>());
  if (!cmd) invalid("config.command", fmt::format("unknown command {}", j["command"].dump()));
  c.command = *cmd;

  if (!j.contains("domain")) invalid("config", "missing \"domain\"");
  c.domain = domain_from_json(j["domain"], "config.domain");

  const char* wkey = c.command == Command::Hartogs ? "profile" : "weight";
  const char* other = c.command == Command::Hartogs ? "weight" : "profile";
  if (j.contains(other))
    invalid("config", fmt::format("\"{}\" is not used by {}; use \"{}\"", other,
                                  command_name(c.command), wkey));
  if (j.contains(wkey)) c.weight = weight_from_json(j[wkey], std::string("config.") + wkey);

  if (j.contains("mode")) {
    const Json& m = j["mode"];
    if (m == "iterated") c.mode = AugmentMode::Iterated;
    else if (m == "direct_sum") c.mode = AugmentMode::DirectSum;
    else invalid("config.mode", "expected \"iterated\" or \"direct_sum\"");
  }
  c.params = params_from(c.command, j.contains("params") ? j["params"] : Json::object(),
                         "config.params");
  return c;
}

Json config_to_json(const RunConfig& c) {
  Json j;
  j["command"] = command_name(c.command);
  j["domain"] = domain_to_json(c.domain);
  j[c.command == Command::Hartogs ? "profile" : "weight"] = weight_to_json(c.weight);
  j["mode"] = c.mode == AugmentMode::Iterated ? "iterated" : "direct_sum";
  j["params"] = params_json(c.params);
  return j;
}

int run(const RunConfig& c, const RunOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const Outputs io(opts);
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, EvalParams>) run_eval(c, p, io, out);
          else if constexpr (std::is_same_v<T, FormulaParams>) run_formula(c, p, io, out);
          else if constexpr (std::is_same_v<T, VerifyParams>) run_verify(c, p, io, out);
          else if constexpr (std::is_same_v<T, OracleParams>) run_oracle(c, p, io, out);
          else if constexpr (std::is_same_v<T, ZerosParams>) run_zeros(c, p, io, out);
          else if constexpr (std::is_same_v<T, RatioParams>) run_ratio(c, p, io, out);
          else if constexpr (std::is_same_v<T, TrackParams>) run_track(c, p, io, out);
          else run_hartogs(c, p, io, out);
        },
        c.params);
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << "\n";
    return kExitComputation;
  } catch (const std::exception& e) {
    err << "error: InternalError: " << e.what() << "\n";
    return kExitComputation;
  }
  return kExitOk;
}

int run_file(const std::string& path, std::optional<Command> expected, const RunOptions& opts,
             std::optional<std::uint64_t> seed, bool dump_config, std::ostream& out,
             std::ostream& err) {
  RunConfig c;
  try {
    std::ifstream f(path);
    if (!f) fail(ErrorKind::ValidationError, fmt::format("cannot read config {}", path));
    Json j;
    try {
      j = Json::parse(f);
    } catch (const Json::parse_error& e) {
      fail(ErrorKind::ValidationError, fmt::format("{}: {}", path, e.what()));
    }
    if (expected) {
      if (!j.is_object()) fail(ErrorKind::ValidationError, "config: expected an object");
      if (!j.contains("command")) j["command"] = command_name(*expected);
      const auto given = j["command"].is_string() ? parse_command(j["command"].get<std::string>())
                                                  : std::nullopt;
      if (given && *given != *expected)
        fail(ErrorKind::ValidationError,
             fmt::format("config.command: config is for {} but {} was requested",
                         command_name(*given), command_name(*expected)));
    }
    c = parse_config(j);
    if (seed) {
      if (auto* o = std::get_if<OracleParams>(&c.params)) o->seed = *seed;
    }
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << "\n";
    return kExitValidation;
  }
  if (dump_config) {
    out << config_to_json(c).dump(2) << "\n";
    return kExitOk;
  }
  return run(c, opts, out, err);
}

}  // namespace bergman::cli
