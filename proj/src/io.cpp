#include "latcell/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace latcell {

std::string fmt_double(double x) {
  if (x == 0.0) x = 0.0;  // normalize -0
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x,
                                 std::chars_format::general, 17);
  (void)ec;
  return std::string(buf, ptr);
}

namespace {

struct Cursor {
  const std::string& text;
  std::string name;
  size_t pos = 0;
  int line = 1;
  int col = 1;

  bool eof() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  void advance() {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }
  // skips spaces, newlines, and '#' comments through end of line
  void skip_ws() {
    while (!eof()) {
      char c = peek();
      if (c == '#') {
        while (!eof() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }
  // skips spaces and tabs only (stays on the current line)
  void skip_blanks() {
    while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) advance();
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(name + ": " + what, line, col);
  }
};

double parse_number(Cursor& cur) {
  size_t start = cur.pos;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(cur.text.data() + start,
                                   cur.text.data() + cur.text.size(), value);
  if (ec != std::errc() || ptr == cur.text.data() + start)
    cur.fail("expected a number");
  while (cur.pos < static_cast<size_t>(ptr - cur.text.data())) cur.advance();
  return value;
}

}  // namespace

Lattice parse_lattice_text(const std::string& text, const std::string& name,
                           const Config& cfg) {
  Cursor cur{text, name};
  cur.skip_ws();
  if (cur.eof()) cur.fail("missing dimension line");
  double n_raw = parse_number(cur);
  int n = static_cast<int>(n_raw);
  if (n_raw != static_cast<double>(n) || n < 1)
    cur.fail("dimension must be a positive integer");

  Mat basis(n, n);
  for (int i = 0; i < n; ++i) {
    cur.skip_ws();
    if (cur.eof()) cur.fail("missing basis row " + std::to_string(i + 1));
    for (int j = 0; j < n; ++j) {
      if (j > 0) {
        cur.skip_blanks();
        if (cur.eof() || cur.peek() == '\n' || cur.peek() == '#')
          cur.fail("row " + std::to_string(i + 1) + " has fewer than " +
                   std::to_string(n) + " entries");
      }
      basis(i, j) = parse_number(cur);
    }
    cur.skip_blanks();
    if (!cur.eof() && cur.peek() != '\n' && cur.peek() != '#')
      cur.fail("row " + std::to_string(i + 1) + " has more than " +
               std::to_string(n) + " entries");
  }
  cur.skip_ws();
  if (!cur.eof()) cur.fail("unexpected trailing content");
  return make_lattice(basis, cfg.rank_tol);
}

Lattice parse_lattice_file(const std::string& path, const Config& cfg) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open lattice file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_lattice_text(buf.str(), path, cfg);
}

std::string emit_lattice_text(const Lattice& lat) {
  std::string out = std::to_string(lat.dim);
  out += '\n';
  for (int i = 0; i < lat.dim; ++i) {
    for (int j = 0; j < lat.dim; ++j) {
      if (j > 0) out += ' ';
      out += fmt_double(lat.basis(i, j));
    }
    out += '\n';
  }
  return out;
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  size_t b = s.find_last_not_of(" \t");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

double arg_number(const std::string& s, const std::string& spec) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error("bad numeric argument '" + s + "' in family spec: " + spec);
  return value;
}

}  // namespace

LatticeSequence parse_family_spec(const std::string& spec,
                                  const std::optional<Mat>& target_basis,
                                  const Config& cfg) {
  size_t open = spec.find('(');
  if (open == std::string::npos || spec.back() != ')')
    throw Error("family spec must look like name(args): " + spec);
  std::string name = trim(spec.substr(0, open));
  std::string inner = spec.substr(open + 1, spec.size() - open - 2);

  std::vector<std::string> args;
  size_t start = 0;
  while (start <= inner.size()) {
    size_t comma = inner.find(',', start);
    if (comma == std::string::npos) {
      args.push_back(trim(inner.substr(start)));
      break;
    }
    args.push_back(trim(inner.substr(start, comma - start)));
    start = comma + 1;
  }
  if (args.size() == 1 && args[0].empty()) args.clear();

  auto require_target = [&]() -> const Mat& {
    if (!target_basis)
      throw MissingTargetError("family '" + name + "' requires a target lattice");
    return *target_basis;
  };

  if (name == "scale-one-axis") {
    if (args.size() != 1) throw Error("scale-one-axis takes one argument (eps)");
    return LatticeSequence::scale_one_axis(require_target(), arg_number(args[0], spec));
  }
  if (name == "perturb-all") {
    if (args.size() != 2) throw Error("perturb-all takes two arguments (delta, seed)");
    double seed_raw = arg_number(args[1], spec);
    return LatticeSequence::perturb_all(require_target(), arg_number(args[0], spec),
                                        static_cast<std::uint64_t>(seed_raw));
  }
  if (name == "alternate") {
    if (args.size() != 2) throw Error("alternate takes two lattice files");
    Lattice a = parse_lattice_file(args[0], cfg);
    Lattice b = parse_lattice_file(args[1], cfg);
    return LatticeSequence::alternate(a.basis, b.basis, target_basis);
  }
  if (name == "constant") {
    if (args.size() != 1) throw Error("constant takes one lattice file");
    Lattice l = parse_lattice_file(args[0], cfg);
    return LatticeSequence::constant(l.basis, target_basis);
  }
  throw Error("unknown family '" + name + "' in spec: " + spec);
}

namespace {

// Minimal JSON writer; every emitter below fixes its field order so
// identical inputs give identical bytes.
class Json {
 public:
  std::string str() && { return std::move(out_); }

  void raw(const std::string& s) { out_ += s; }
  void key(const std::string& k) {
    out_ += '"';
    out_ += k;
    out_ += "\": ";
  }
  void number(double x) { out_ += fmt_double(x); }
  void integer(long long x) { out_ += std::to_string(x); }
  void unsigned_integer(std::uint64_t x) { out_ += std::to_string(x); }
  void boolean(bool b) { out_ += b ? "true" : "false"; }
  void string(const std::string& s) {
    out_ += '"';
    for (char c : s) {
      if (c == '"' || c == '\\') out_ += '\\';
      out_ += c;
    }
    out_ += '"';
  }
  void vector(const Vec& v) {
    out_ += '[';
    for (int i = 0; i < v.size(); ++i) {
      if (i) out_ += ", ";
      number(v[i]);
    }
    out_ += ']';
  }
  void coeffs(const CoeffVec& v) {
    out_ += '[';
    for (int i = 0; i < v.size(); ++i) {
      if (i) out_ += ", ";
      integer(v[i]);
    }
    out_ += ']';
  }
  void numbers(const std::vector<double>& xs) {
    out_ += '[';
    for (size_t i = 0; i < xs.size(); ++i) {
      if (i) out_ += ", ";
      number(xs[i]);
    }
    out_ += ']';
  }
  void integers(const std::vector<long long>& xs) {
    out_ += '[';
    for (size_t i = 0; i < xs.size(); ++i) {
      if (i) out_ += ", ";
      integer(xs[i]);
    }
    out_ += ']';
  }

 private:
  std::string out_;
};

std::string cell_json(const VoronoiCell& cell, const std::vector<Vec>& verts,
                      const CellRadii& rr, double volume) {
  Json j;
  j.raw("{\n  ");
  j.key("n");
  j.integer(cell.lattice.dim);
  j.raw(",\n  ");
  j.key("cutoff_radius");
  j.number(cell.cutoff_radius);
  j.raw(",\n  ");
  j.key("halfspaces");
  j.raw("[");
  for (size_t i = 0; i < cell.halfspaces.size(); ++i) {
    j.raw(i ? ",\n    " : "\n    ");
    j.raw("{");
    j.key("v");
    j.vector(cell.halfspaces[i].normal);
    j.raw(", ");
    j.key("b");
    j.number(cell.halfspaces[i].offset);
    j.raw("}");
  }
  j.raw("\n  ],\n  ");
  j.key("vertices");
  j.raw("[");
  for (size_t i = 0; i < verts.size(); ++i) {
    j.raw(i ? ",\n    " : "\n    ");
    j.vector(verts[i]);
  }
  j.raw("\n  ],\n  ");
  j.key("packing");
  j.number(rr.packing);
  j.raw(",\n  ");
  j.key("covering");
  j.number(rr.covering);
  j.raw(",\n  ");
  j.key("volume");
  j.number(volume);
  j.raw("\n}\n");
  return std::move(j).str();
}

std::optional<Mat> load_target(const RunConfig& rc) {
  if (rc.target_path.empty()) return std::nullopt;
  return parse_lattice_file(rc.target_path, rc.tolerances).basis;
}

}  // namespace

std::string run_cell(const RunConfig& rc) {
  const Config& cfg = rc.tolerances;
  Lattice lat = parse_lattice_file(rc.lattice_path, cfg);
  VoronoiCell cell = prune_redundant(build_cell(lat, cfg), cfg.feas_tol, cfg);
  std::vector<Vec> verts = vertices(cell, cfg);

  CellRadii rr;
  rr.packing = shortest_vector(lat, cfg).norm / 2.0;
  for (const Vec& v : verts) rr.covering = std::max(rr.covering, v.norm());

  cell.vertices = verts;
  VolumeEstimate vol =
      cell_volume(cell, VolumeMethod::Auto, rc.volume_samples, rc.seed, cfg);
  return cell_json(cell, verts, rr, vol.value);
}

std::string run_radii(const RunConfig& rc) {
  const Config& cfg = rc.tolerances;
  Lattice lat = parse_lattice_file(rc.lattice_path, cfg);
  CellRadii rr = radii(lat, cfg);
  Json j;
  j.raw("{\n  ");
  j.key("n");
  j.integer(lat.dim);
  j.raw(",\n  ");
  j.key("packing");
  j.number(rr.packing);
  j.raw(",\n  ");
  j.key("covering");
  j.number(rr.covering);
  j.raw("\n}\n");
  return std::move(j).str();
}

std::string run_converge(const RunConfig& rc) {
  const Config& cfg = rc.tolerances;
  LatticeSequence seq = parse_family_spec(rc.family_spec, load_target(rc), cfg);
  ConvergenceParams params;
  params.k_max = rc.k_max;
  ConvergenceReport rep = check_convergence(seq, params, cfg);

  Json j;
  j.raw("{\n  ");
  j.key("family");
  j.string(seq.describe());
  j.raw(",\n  ");
  j.key("k_max");
  j.integer(rc.k_max);
  j.raw(",\n  ");
  j.key("ks");
  j.integers(rep.ks);
  j.raw(",\n  ");
  j.key("basis_residuals");
  j.numbers(rep.basis_residuals);
  j.raw(",\n  ");
  j.key("cassels_i");
  j.raw("[");
  for (size_t i = 0; i < rep.cassels_i.size(); ++i) {
    const auto& pr = rep.cassels_i[i];
    j.raw(i ? ",\n    " : "\n    ");
    j.raw("{");
    j.key("coeffs");
    j.coeffs(pr.coeffs);
    j.raw(", ");
    j.key("point");
    j.vector(pr.point);
    j.raw(", ");
    j.key("residuals");
    j.numbers(pr.residuals);
    j.raw("}");
  }
  j.raw("\n  ],\n  ");
  j.key("cassels_ii");
  j.raw("[");
  for (size_t i = 0; i < rep.cassels_ii.size(); ++i) {
    const auto& ps = rep.cassels_ii[i];
    j.raw(i ? ",\n    " : "\n    ");
    j.raw("{");
    j.key("probe");
    j.vector(ps.probe);
    j.raw(", ");
    j.key("epsilon0");
    j.number(ps.epsilon0);
    j.raw(", ");
    j.key("k0");
    j.integer(ps.k0);
    j.raw(", ");
    j.key("verdict");
    j.boolean(ps.verdict);
    j.raw("}");
  }
  j.raw("\n  ],\n  ");
  j.key("cassels_ii_window");
  j.raw("[" + std::to_string(rep.cassels_ii_lo) + ", " +
        std::to_string(rep.cassels_ii_hi) + "]");
  j.raw(",\n  ");
  j.key("uniform_radius");
  j.number(rep.uniform_radius);
  j.raw(",\n  ");
  j.key("verdict");
  j.string(verdict_name(rep.verdict));
  j.raw(",\n  ");
  j.key("note");
  j.string(rep.note);
  j.raw("\n}\n");
  return std::move(j).str();
}

std::string run_limits(const RunConfig& rc) {
  const Config& cfg = rc.tolerances;
  if (rc.format != "json" && rc.format != "csv")
    throw Error("limits format must be json or csv");
  LatticeSequence seq = parse_family_spec(rc.family_spec, load_target(rc), cfg);
  LimitParams params;
  params.k_lo = rc.k_lo;
  params.k_hi = rc.k_hi;
  params.n_samples = rc.samples;
  params.seed = rc.seed;
  LimitReport rep = verify_main_theorem(seq, params, cfg);

  if (rc.format == "csv") {
    std::string out = "k,d_H\n";
    for (long long k = rep.k_lo; k <= rep.k_hi; ++k) {
      out += std::to_string(k);
      out += ',';
      out += fmt_double(rep.hausdorff[static_cast<size_t>(k - rep.k_lo)]);
      out += '\n';
    }
    return out;
  }

  Json j;
  j.raw("{\n  ");
  j.key("family");
  j.string(seq.describe());
  j.raw(",\n  ");
  j.key("window");
  j.raw("[" + std::to_string(rep.k_lo) + ", " + std::to_string(rep.k_hi) + "]");
  j.raw(",\n  ");
  j.key("samples");
  j.integer(rep.n_samples);
  j.raw(",\n  ");
  j.key("seed");
  j.unsigned_integer(rep.seed);
  j.raw(",\n  ");
  j.key("tail_fraction");
  j.number(cfg.tail_fraction);
  j.raw(",\n  ");
  j.key("sample_radius");
  j.number(rep.sample_radius);
  j.raw(",\n  ");
  j.key("interior_margin");
  j.number(rep.interior_margin);
  j.raw(",\n  ");
  j.key("h_tol");
  j.number(rep.h_tol);
  j.raw(",\n  ");
  j.key("points");
  j.raw("[");
  for (size_t i = 0; i < rep.samples.size(); ++i) {
    const auto& s = rep.samples[i];
    j.raw(i ? ",\n    " : "\n    ");
    j.raw("{");
    j.key("x");
    j.vector(s.point);
    j.raw(", ");
    j.key("class");
    j.string(point_class_name(s.cls));
    j.raw(", ");
    j.key("target_class");
    j.string(target_class_name(s.target_cls));
    j.raw("}");
  }
  j.raw("\n  ],\n  ");
  j.key("confusion");
  j.raw("{");
  static const char* target_names[3] = {"interior", "boundary", "exterior"};
  for (int t = 0; t < 3; ++t) {
    if (t) j.raw(", ");
    j.key(target_names[t]);
    std::vector<long long> row(rep.counts[t].begin(), rep.counts[t].end());
    j.integers(row);
  }
  j.raw("}");
  j.raw(",\n  ");
  j.key("interior_misclass");
  j.number(rep.interior_misclass);
  j.raw(",\n  ");
  j.key("exterior_misclass");
  j.number(rep.exterior_misclass);
  j.raw(",\n  ");
  j.key("hausdorff");
  j.numbers(rep.hausdorff);
  j.raw(",\n  ");
  j.key("pass");
  j.boolean(rep.pass);
  j.raw(",\n  ");
  j.key("note");
  j.string(rep.note);
  j.raw("\n}\n");
  return std::move(j).str();
}

}  // namespace latcell
