#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qcising/alist.hpp"
#include "qcising/boltzmann.hpp"
#include "qcising/chargemap.hpp"
#include "qcising/codes.hpp"
#include "qcising/equilibrium.hpp"
#include "qcising/errors.hpp"
#include "qcising/exponent_io.hpp"
#include "qcising/gauge.hpp"
#include "qcising/partition.hpp"
#include "qcising/tanner.hpp"

namespace qcising::cli {

namespace {

struct Global {
  unsigned threads = 1;
  std::uint64_t seed = 1;
  std::string output;
};

std::string num(double v, int digits = 12) {
  std::ostringstream o;
  o << std::setprecision(digits) << v;
  return o.str();
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

template <class T>
std::string join_numbers(const std::vector<T>& values, const std::string& sep) {
  std::vector<std::string> parts;
  for (const auto& v : values) parts.push_back(std::to_string(v));
  return join(parts, sep);
}

// Default guard, optionally replaced by an environment variable.
std::uint64_t env_guard(const char* name, std::uint64_t fallback) {
  const char* raw = std::getenv(name);
  if (!raw || !*raw) return fallback;
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(raw, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != std::string(raw).size() || raw[0] == '-') {
    throw std::invalid_argument(std::string("environment variable ") + name + " must be a non-negative integer");
  }
  return v;
}

void warn_if_raised(std::ostream& err, const std::string& what, std::uint64_t value, std::uint64_t builtin) {
  if (value > builtin) {
    err << "warning: " << what << " = " << value << " is above the built-in guard " << builtin
        << "; exhaustive work grows quickly\n";
  }
}

void emit(const Global& g, std::ostream& out, const std::string& text) {
  if (g.output.empty()) {
    out << text;
  } else {
    write_text_file(g.output, text);
  }
}

BitConfig bits_from_string(const std::string& s) {
  BitConfig x;
  for (char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("configuration must be a string of 0/1 characters");
    x.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return x;
}

std::string bits_to_string(const BitConfig& x) {
  std::string s;
  for (auto b : x) s += static_cast<char>('0' + b);
  return s;
}

std::size_t first_line_tokens(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    std::size_t n = 0;
    while (ls >> tok) ++n;
    return n;
  }
  return 0;
}

struct LoadedCode {
  BinaryMatrix h;
  std::optional<ExponentMatrix> exponent;  // single-weight exponent input
  std::string kind;
};

// Alist files open with "N M" (two tokens); exponent files with "m n L".
LoadedCode load_code(const std::string& path) {
  const std::string text = read_text_file(path);
  if (first_line_tokens(text) == 2) return {parse_alist(text), std::nullopt, "alist"};
  const MetExponentMatrix met = parse_met_exponent(text);
  if (met.rows() > 0 && met.is_single_weight()) {
    const ExponentMatrix e = met.to_exponent();
    return {lift(e), e, "exponent"};
  }
  return {lift_met(met), std::nullopt, "met-exponent"};
}

// ---------------------------------------------------------------------------- lift

struct LiftOptions {
  std::string input;
  bool met = false;
};

int cmd_lift(const Global& g, const LiftOptions& o, std::ostream& out) {
  const std::string text = read_text_file(o.input);
  const BinaryMatrix h = o.met ? lift_met(parse_met_exponent(text)) : lift(parse_exponent(text));
  emit(g, out, write_alist(h));
  return kExitOk;
}

// ------------------------------------------------------------------------- analyze

struct AnalyzeOptions {
  std::string input;
  int girth_cap = kDefaultGirthCap;
  std::size_t a_max = 4;
  std::size_t b_max = 4;
  std::optional<std::uint64_t> ts_budget;
  std::optional<std::uint64_t> nullspace_guard;
  std::string ts_csv;
};

int cmd_analyze(const Global& g, const AnalyzeOptions& o, std::ostream& out, std::ostream& err) {
  constexpr std::uint64_t kBuiltinBudget = TrappingSetOptions{}.budget;
  const std::uint64_t budget = o.ts_budget.value_or(env_guard("QCISING_TS_BUDGET", kBuiltinBudget));
  const std::uint64_t guard = o.nullspace_guard.value_or(env_guard("QCISING_NULLSPACE_GUARD", kDefaultNullspaceGuard));
  warn_if_raised(err, "trapping-set budget", budget, kBuiltinBudget);
  warn_if_raised(err, "nullspace guard", guard, kDefaultNullspaceGuard);

  const LoadedCode code = load_code(o.input);
  const TannerGraph tanner = build_tanner(code.h);
  std::ostringstream report;
  report << "# analyze " << o.input << " (" << code.kind << ")\n";
  report << "checks: " << tanner.num_checks << '\n';
  report << "variables: " << tanner.num_variables << '\n';
  report << "edges: " << tanner.edges.size() << '\n';

  const Girth bfs = girth_bfs(code.h);
  report << "girth: " << bfs.to_string() << '\n';
  if (code.exponent) {
    const Girth algebraic = cycle_condition_girth(*code.exponent, o.girth_cap);
    if (algebraic == apply_cap(bfs, o.girth_cap)) {
      report << "girth_check: cycle condition agrees (cap " << o.girth_cap << ")\n";
    } else {
      report << "girth_check: cycle condition reports " << algebraic.to_string() << " (cap " << o.girth_cap
             << "), disagreeing with BFS\n";
    }
  }

  try {
    const auto d = min_distance_exhaustive(code.h, static_cast<std::size_t>(guard));
    report << "d_min: " << (d ? std::to_string(*d) : std::string("none (trivial code)")) << '\n';
  } catch (const ResourceError& e) {
    report << "d_min: skipped, " << e.what() << "; raise --nullspace-guard to force\n";
  }

  const auto sets = find_trapping_sets(code.h, {o.a_max, o.b_max, budget});
  report << "trapping_sets: " << sets.size() << " (a <= " << o.a_max << ", b <= " << o.b_max << ")\n";
  if (o.ts_csv.empty()) {
    report << trapping_sets_csv(sets);
  } else {
    write_text_file(o.ts_csv, trapping_sets_csv(sets));
  }
  emit(g, out, report.str());
  return kExitOk;
}

// ----------------------------------------------------------------------------- map

struct MapOptions {
  std::string mode;
  std::string input;
  std::optional<long> r1, r3, e, a, b;
  std::optional<double> grid_step, alpha_deg;
  std::optional<int> q;
};

long integral_square_gap(const ChargedParticle& p, const ChargedParticle& q) {
  const double d = q.x - p.x;
  const double sq = d * d;
  if (!(sq > 0) || std::floor(sq) != sq) {
    throw std::domain_error("squared gap between particles " + p.id + " and " + q.id + " must be a positive integer");
  }
  return static_cast<long>(sq);
}

std::vector<ChargedParticle> read_particles(const std::string& path, std::size_t expected, const std::string& mode) {
  auto particles = parse_particles_csv(read_text_file(path));
  if (expected && particles.size() != expected) {
    throw std::invalid_argument("mode " + mode + " needs exactly " + std::to_string(expected) + " particles, got " +
                                std::to_string(particles.size()));
  }
  return particles;
}

std::string cell_block(const CellMap& cm, const std::string& title) {
  return format_exponent(cm.matrix, {title + ": Lx = " + std::to_string(cm.lx) + ", Ly = " + std::to_string(cm.ly) +
                                         ", L = lcm(Lx, Ly) = " + std::to_string(cm.matrix.circulant_size()),
                                     "columns: particles " + join(cm.particle_ids, " "),
                                     "rows: x-projections, y-projections"});
}

int cmd_map(const Global& g, const MapOptions& o, std::ostream& out) {
  std::string text;
  if (o.mode == "1d3") {
    long r1 = 0;
    long r3 = 0;
    if (!o.input.empty()) {
      const auto p = read_particles(o.input, 3, o.mode);
      r1 = integral_square_gap(p[0], p[1]);
      r3 = integral_square_gap(p[1], p[2]);
    } else if (o.r1 && o.r3) {
      r1 = *o.r1;
      r3 = *o.r3;
    } else if (o.e) {
      if (*o.e < 2) throw std::domain_error("e must be at least 2");
      r1 = 1;
      r3 = *o.e - 1;
    } else {
      throw std::invalid_argument("mode 1d3 needs --input, --r1 with --r3, or --e");
    }
    const auto set = map_1d_three(r1, r3);
    std::vector<std::string> comments = {"map 1d3: e = R1 + R3 = " + std::to_string(set.e),
                                         "rows: balanced pairs [n1 | n3] with (n1 + n3) mod e = 0"};
    if (!o.e || !o.input.empty() || o.r1) comments.insert(comments.begin() + 1, "R1 = " + std::to_string(r1) + ", R3 = " + std::to_string(r3));
    text = format_exponent(balanced_pairs_matrix(set), comments);
  } else if (o.mode == "1d4") {
    long a = 0;
    long b = 0;
    if (!o.input.empty()) {
      const auto p = read_particles(o.input, 4, o.mode);
      a = integral_square_gap(p[0], p[1]);
      b = integral_square_gap(p[1], p[2]);
      if (integral_square_gap(p[2], p[3]) != a + b) throw std::domain_error("mode 1d4 needs r34^2 = r12^2 + r23^2");
    } else if (o.a && o.b) {
      a = *o.a;
      b = *o.b;
    } else {
      throw std::invalid_argument("mode 1d4 needs --input or --a with --b");
    }
    const auto row = map_1d_four(a, b);
    text = format_exponent(row.matrix, {"map 1d4: a = " + std::to_string(a) + ", b = " + std::to_string(b) +
                                            ", c = lcm(a+b, a+2b) = " + std::to_string(row.matrix.circulant_size()),
                                        "columns: " + join(row.labels, ", ")});
  } else if (o.mode == "2dcell") {
    if (o.input.empty()) throw std::invalid_argument("mode 2dcell needs --input");
    text = cell_block(map_2d_cell(read_particles(o.input, 0, o.mode)), "map 2dcell");
  } else if (o.mode == "coupled") {
    if (o.input.empty()) throw std::invalid_argument("mode coupled needs --input");
    const auto cells = group_cells(read_particles(o.input, 0, o.mode));
    const auto maps = map_coupled_cells(cells);
    for (std::size_t k = 0; k < maps.size(); ++k) {
      if (k) text += '\n';
      text += cell_block(maps[k], "map coupled, cell " + (cells[k].front().cell.empty() ? std::to_string(k) : cells[k].front().cell));
    }
  } else if (o.mode == "hex") {
    if (!o.grid_step || !o.alpha_deg || !o.q) throw std::invalid_argument("mode hex needs --R, --alpha and --q");
    std::vector<std::array<double, 2>> nodes;
    if (!o.input.empty()) {
      for (const auto& p : read_particles(o.input, 7, o.mode)) nodes.push_back({p.x, p.y});
    } else {
      nodes = hexagon_nodes(*o.grid_step);
    }
    const auto map = hexagonal_rotation_map(*o.grid_step, *o.alpha_deg * std::numbers::pi / 180.0, *o.q, nodes);
    text = format_exponent(map.matrix, {"map hex: R = " + num(*o.grid_step) + ", alpha = " + num(*o.alpha_deg) +
                                            " deg, q = " + std::to_string(*o.q) + ", dR = " + std::to_string(map.dr),
                                        "rows: x, y; column 0 is the rotation centre"});
  } else {
    throw std::invalid_argument("unknown map mode " + o.mode);
  }
  emit(g, out, text);
  return kExitOk;
}

// -------------------------------------------------------------------------- energy

struct EnergyOptions {
  std::string theta;
  std::string code;
  std::string config;
  bool enumerate = false;
  std::optional<std::size_t> guard;
  std::size_t max_weight = 2;
  bool minima = false;
};

int cmd_energy(const Global& g, const EnergyOptions& o, std::ostream& out, std::ostream& err) {
  std::ostringstream text;
  text << std::setprecision(12);
  if (!o.theta.empty() == !o.code.empty()) throw std::invalid_argument("energy needs exactly one of --theta or --code");

  if (!o.theta.empty()) {
    const std::size_t builtin = EnumerationOptions{}.guard;
    const std::size_t guard = o.guard.value_or(env_guard("QCISING_ENUM_GUARD", builtin));
    warn_if_raised(err, "enumeration guard", guard, builtin);
    const BoltzmannParams theta = parse_theta(read_text_file(o.theta));
    const EnumerationOptions opts{guard, g.threads};
    if (!o.config.empty()) {
      const BitConfig x = bits_from_string(o.config);
      text << "config,energy,probability\n";
      text << o.config << ',' << bm_energy(theta, x) << ',' << bm_prob(theta, x, opts) << '\n';
    } else if (o.enumerate) {
      if (theta.n > guard) throw ResourceError("enumeration-N", "N = " + std::to_string(theta.n) + " exceeds the guard " + std::to_string(guard));
      const double log_z = bm_log_partition(theta, opts);
      text << "config,energy,probability\n";
      for (std::uint64_t i = 0; i < (std::uint64_t{1} << theta.n); ++i) {
        const BitConfig x = config_from_index(i, theta.n);
        const double e = bm_energy(theta, x);
        text << bits_to_string(x) << ',' << e << ',' << std::exp(-e - log_z) << '\n';
      }
      text << "# Z = " << std::exp(log_z) << ", log Z = " << log_z << '\n';
    } else {
      const double log_z = bm_log_partition(theta, opts);
      text << "Z: " << std::exp(log_z) << "\nlog_Z: " << log_z << '\n';
    }
    emit(g, out, text.str());
    return kExitOk;
  }

  const LoadedCode code = load_code(o.code);
  if (!o.config.empty()) {
    const BitVector x = BitVector::from_string(o.config);
    text << "config,energy\n" << o.config << ',' << syndrome_energy(code.h, x) << '\n';
  } else if (o.minima) {
    const std::size_t builtin = kDefaultMinimaGuard;
    const std::size_t guard = o.guard.value_or(env_guard("QCISING_MINIMA_GUARD", builtin));
    warn_if_raised(err, "minima guard", guard, builtin);
    MinimaReport r;
    try {
      r = codeword_minima_check(code.h, guard);
    } catch (const ResourceError&) {
      r = codeword_minima_certificate(code.h);
    }
    text << "method: " << (r.exhaustive ? "exhaustive" : "linearity certificate") << '\n';
    text << "codewords: " << r.codewords << '\n';
    text << "nonzero_syndrome: " << r.nonzero_syndrome.size() << '\n';
    text << "zero_cost_bits: " << join_numbers(r.zero_cost_bits, " ") << '\n';
    text << "strict_minima: " << (r.pass ? "yes" : "no") << '\n';
  } else if (o.enumerate) {
    // Landscape over all words of weight <= max_weight.
    const std::size_t n = code.h.cols();
    std::uint64_t count = 0;
    std::uint64_t binom = 1;
    for (std::size_t w = 0; w <= o.max_weight && w <= n; ++w) {
      if (w > 0) binom = binom * (n - w + 1) / w;
      count += binom;
    }
    const std::uint64_t builtin = 1'000'000;
    const std::uint64_t budget = o.guard ? *o.guard : env_guard("QCISING_LANDSCAPE_BUDGET", builtin);
    warn_if_raised(err, "landscape budget", budget, builtin);
    if (count > budget) {
      throw ResourceError("landscape-budget", std::to_string(count) + " configurations exceed the budget " + std::to_string(budget));
    }
    text << "weight,support,energy\n";
    std::vector<std::size_t> support;
    auto visit = [&](auto&& self, std::size_t first) -> void {
      BitVector x(n);
      for (auto i : support) x.set(i);
      text << support.size() << ',' << join_numbers(support, " ") << ',' << syndrome_energy(code.h, x) << '\n';
      if (support.size() == o.max_weight) return;
      for (std::size_t i = first; i < n; ++i) {
        support.push_back(i);
        self(self, i + 1);
        support.pop_back();
      }
    };
    visit(visit, 0);
  } else {
    throw std::invalid_argument("energy --code needs --config, --enumerate or --minima");
  }
  emit(g, out, text.str());
  return kExitOk;
}

// ----------------------------------------------------------------------- partition

struct PartitionOptions {
  std::string input;
  std::string method = "ryser";
  BetheOptions bethe;
  std::string report;
};

int cmd_partition(const Global& g, const PartitionOptions& o, std::ostream& out) {
  const RealMatrix a = parse_matrix_csv(read_text_file(o.input));
  std::ostringstream text;
  text << std::setprecision(12) << std::showpoint;
  if (o.method == "brute") {
    text << permanent_bruteforce(a) << '\n';
  } else if (o.method == "ryser") {
    text << permanent_ryser(a, g.threads) << '\n';
  } else if (o.method == "det") {
    text << det_normalization(a) << '\n';
  } else {
    const BetheResult r = bethe_permanent(a, o.bethe);
    text << r.value << '\n';
    text << std::noshowpoint << "# converged: " << (r.converged ? "yes" : "no") << ", iterations: " << r.iterations
         << ", residual: " << r.residual << '\n';
    if (!o.report.empty()) write_text_file(o.report, bethe_residual_csv(r));
  }
  emit(g, out, text.str());
  return kExitOk;
}

// -------------------------------------------------------------------- sc-construct

struct ScOptions {
  std::size_t w = 0;
  std::size_t c = 0;
  int n = 0;
  std::size_t l = 0;
  std::string shifts;
  std::vector<std::size_t> offsets;
  bool lifted = false;
};

int cmd_sc(const Global& g, const ScOptions& o, std::ostream& out) {
  const MetExponentMatrix b = parse_met_exponent(read_text_file(o.shifts));
  const std::vector<std::size_t> offsets = o.offsets.empty() ? default_offsets(o.w, o.c) : o.offsets;
  const MetExponentMatrix sc = sc_construct({o.w, o.c, o.n, o.l, b, offsets});
  if (o.lifted) {
    emit(g, out, write_alist(lift_met(sc)));
  } else {
    emit(g, out, format_met_exponent(sc, {"sc-construct: W = " + std::to_string(o.w) + ", C = " + std::to_string(o.c) +
                                              ", N = " + std::to_string(o.n) + ", L = " + std::to_string(o.l),
                                          "offsets D = " + join_numbers(offsets, " ")}));
  }
  return kExitOk;
}

// ----------------------------------------------------------------------- ra-encode

struct RaOptions {
  std::string h1;
  std::string message;
  std::size_t random = 0;
};

int cmd_ra(const Global& g, const RaOptions& o, std::ostream& out) {
  const ExponentMatrix h1 = parse_exponent(read_text_file(o.h1));
  const RaCode code{h1, h1.rows()};
  const BinaryMatrix h = ra_build(code);
  const std::size_t k = ra_message_length(code);
  std::vector<BitVector> messages;
  if (!o.message.empty()) messages.push_back(BitVector::from_string(o.message));
  std::mt19937_64 rng(g.seed);
  for (std::size_t i = 0; i < o.random; ++i) {
    BitVector m(k);
    for (std::size_t b = 0; b < k; ++b) m.set(b, (rng() & 1U) != 0);
    messages.push_back(m);
  }
  if (messages.empty()) throw std::invalid_argument("ra-encode needs --message or --random");
  std::ostringstream text;
  text << "message,codeword,syndrome_weight\n";
  for (const auto& m : messages) {
    const BitVector x = ra_encode(code, m);
    text << m.to_string() << ',' << x.to_string() << ',' << h.multiply(x).weight() << '\n';
  }
  emit(g, out, text.str());
  return kExitOk;
}

// --------------------------------------------------------------------------- gauge

struct GaugeOptions {
  std::string input;
  std::string axis = "rows";
  std::optional<std::size_t> row;
  long multiplier = 1;
  bool collapse = false;
  std::string collapse_alist;
};

int cmd_gauge(const Global& g, const GaugeOptions& o, std::ostream& out) {
  const ExponentMatrix e = parse_exponent(read_text_file(o.input));
  const GaugeAxis axis = o.axis == "rows" ? GaugeAxis::rows : GaugeAxis::columns;
  const auto verdict = shbf_gauge_check(e, axis);
  std::ostringstream text;
  text << "# gauge: L = " << e.circulant_size() << ", axis " << o.axis << '\n';
  text << "line,sum,sum_mod_L,pass\n";
  for (std::size_t line = 0; line < verdict.size(); ++line) {
    long sum = 0;
    const std::size_t length = axis == GaugeAxis::rows ? e.cols() : e.rows();
    for (std::size_t t = 0; t < length; ++t) {
      const int s = axis == GaugeAxis::rows ? e.at(line, t) : e.at(t, line);
      if (s != kZeroBlock) sum += s;
    }
    text << line << ',' << sum << ',' << sum % e.circulant_size() << ',' << (verdict[line] ? 1 : 0) << '\n';
  }
  if (o.row) {
    text << "# row " << *o.row << " shifted by " << o.multiplier << " * S: gauge "
         << (row_shift_invariance(e, *o.row, o.multiplier) ? "preserved" : "changed") << '\n';
  }
  if (e.rows() == 3) {
    const SphericalMatrix sm = spherical_from_exponent(e);
    if (sm.divisibility) {
      const auto& d = *sm.divisibility;
      text << "# divisibility: k = " << d.k << ", radii " << join_numbers(d.radii, " ") << ", k mod r_i = 0: ";
      for (std::size_t i = 0; i < d.radius_divides.size(); ++i) text << (i ? " " : "") << (d.radius_divides[i] ? "yes" : "no");
      text << ", k mod sum = 0: " << (d.sum_divides ? "yes" : "no") << ", (sum)*(prod) | k: " << (d.general_divides ? "yes" : "no")
           << '\n';
    }
    if (o.collapse || !o.collapse_alist.empty()) {
      const CollapsedSpherical c = collapse_radial(sm);
      text << "# collapsed radius row: S = " << c.block << ", shifts " << join_numbers(c.radius_shifts, " ") << '\n';
      text << "# collapsed phi cell (k = " << c.k << "): " << join_numbers(c.phi_cell, "+") << '\n';
      text << "# collapsed theta cell (k = " << c.k << "): " << join_numbers(c.theta_cell, "+") << '\n';
      if (!o.collapse_alist.empty()) write_text_file(o.collapse_alist, write_alist(c.to_binary()));
    }
  } else if (o.collapse || !o.collapse_alist.empty()) {
    throw std::invalid_argument("--collapse needs a 3-row (radius, phi, theta) matrix");
  }
  emit(g, out, text.str());
  return kExitOk;
}

// --------------------------------------------------------------------------- relax

struct RelaxCliOptions {
  std::string input;
  std::string geometry = "circle";
  double circumference = 0;
  double lx = 0;
  double ly = 0;
  double twist = 0;
  std::size_t nx = 0;
  std::size_t ny = 0;
  RelaxOptions relax;
  std::string trajectory;
};

int cmd_relax(const Global& g, const RelaxCliOptions& o, std::ostream& out) {
  ChargeSystem system;
  if (o.geometry == "circle") {
    system.geometry = Circle{o.circumference};
  } else {
    system.geometry = Torus{o.lx, o.ly, o.nx, o.ny, o.twist};
  }
  for (const auto& p : parse_particles_csv(read_text_file(o.input))) system.particles.push_back({p.q, p.x, p.y});
  system.validate();

  const RelaxResult r = relax(system, o.relax);
  const ForceReport forces = net_forces(r.system);
  std::ostringstream text;
  text << std::setprecision(12);
  text << "# converged: " << (r.converged ? "yes" : "no") << ", iterations: " << r.iterations
       << ", max force: " << forces.max_norm << ", energy: " << screened_energy(r.system) << '\n';
  text << forces_csv(r.system, forces);
  if (!o.trajectory.empty()) write_text_file(o.trajectory, trajectory_csv(r));
  emit(g, out, text.str());
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quasi-cyclic code and Ising equilibrium toolkit"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--threads", g.threads, "Worker threads for exhaustive sums (0 = hardware)");
  app.add_option("--seed", g.seed, "Seed for randomized inputs");
  app.add_option("-o,--output", g.output, "Write the result here instead of stdout");

  LiftOptions lift_o;
  auto* lift_cmd = app.add_subcommand("lift", "Lift an exponent matrix to a binary alist");
  lift_cmd->add_option("input", lift_o.input, "Exponent-matrix file")->required();
  lift_cmd->add_flag("--met", lift_o.met, "Cells may hold comma-joined shift lists");

  AnalyzeOptions an_o;
  auto* an_cmd = app.add_subcommand("analyze", "Girth, trapping sets and minimum distance");
  an_cmd->add_option("input", an_o.input, "Alist or exponent-matrix file")->required();
  an_cmd->add_option("--girth-cap", an_o.girth_cap, "Largest cycle length searched algebraically")->check(CLI::Range(4, 64));
  an_cmd->add_option("--a-max", an_o.a_max, "Largest trapping-set size")->check(CLI::Range(1, 64));
  an_cmd->add_option("--b-max", an_o.b_max, "Largest odd-check count");
  an_cmd->add_option("--ts-budget", an_o.ts_budget, "Bound on C(n, a_max) (env QCISING_TS_BUDGET)");
  an_cmd->add_option("--nullspace-guard", an_o.nullspace_guard, "Largest nullspace dimension enumerated (env QCISING_NULLSPACE_GUARD)");
  an_cmd->add_option("--ts-csv", an_o.ts_csv, "Write the trapping-set CSV here");

  MapOptions map_o;
  auto* map_cmd = app.add_subcommand("map", "Map a charge system to an exponent matrix");
  map_cmd->add_option("--mode", map_o.mode, "1d3, 1d4, 2dcell, coupled or hex")
      ->required()
      ->check(CLI::IsMember({"1d3", "1d4", "2dcell", "coupled", "hex"}));
  map_cmd->add_option("--input", map_o.input, "Charges CSV (id,q,x,y[,cell])");
  map_cmd->add_option("--r1", map_o.r1, "Squared distance r12^2 (1d3)");
  map_cmd->add_option("--r3", map_o.r3, "Squared distance r32^2 (1d3)");
  map_cmd->add_option("--e", map_o.e, "Circulant size e = R1 + R3 (1d3)");
  map_cmd->add_option("--a", map_o.a, "Squared gap r12^2 (1d4)");
  map_cmd->add_option("--b", map_o.b, "Squared gap r23^2 (1d4)");
  map_cmd->add_option("--R", map_o.grid_step, "Grid step (hex)");
  map_cmd->add_option("--alpha", map_o.alpha_deg, "Rotation angle in degrees (hex)");
  map_cmd->add_option("--q", map_o.q, "Quantization count (hex)");

  EnergyOptions en_o;
  auto* en_cmd = app.add_subcommand("energy", "Boltzmann or syndrome energies and exact Z");
  en_cmd->add_option("--theta", en_o.theta, "Boltzmann parameter file");
  en_cmd->add_option("--code", en_o.code, "Alist or exponent-matrix file (syndrome energy)");
  en_cmd->add_option("--config", en_o.config, "Configuration as a 0/1 string");
  en_cmd->add_flag("--enumerate", en_o.enumerate, "Tabulate every configuration (theta) or low-weight words (code)");
  en_cmd->add_option("--max-weight", en_o.max_weight, "Largest word weight tabulated for --code --enumerate");
  en_cmd->add_flag("--minima", en_o.minima, "Check that codewords are strict energy minima");
  en_cmd->add_option("--guard", en_o.guard, "Override the enumeration guard (env QCISING_ENUM_GUARD / QCISING_MINIMA_GUARD / QCISING_LANDSCAPE_BUDGET)");

  PartitionOptions pa_o;
  auto* pa_cmd = app.add_subcommand("partition", "Permanent, Bethe permanent or determinant normalization");
  pa_cmd->add_option("input", pa_o.input, "Matrix CSV")->required();
  pa_cmd->add_option("--method", pa_o.method, "brute, ryser, bethe or det")->check(CLI::IsMember({"brute", "ryser", "bethe", "det"}));
  pa_cmd->add_option("--damping", pa_o.bethe.damping, "Bethe message damping in (0, 1]")->check(CLI::Range(1e-12, 1.0));
  pa_cmd->add_option("--tol", pa_o.bethe.tol, "Bethe residual tolerance")->check(CLI::PositiveNumber);
  pa_cmd->add_option("--max-iter", pa_o.bethe.max_iter, "Bethe iteration limit");
  pa_cmd->add_option("--report", pa_o.report, "Write the Bethe residual history CSV here");

  ScOptions sc_o;
  auto* sc_cmd = app.add_subcommand("sc-construct", "Tail-biting spatially coupled construction");
  sc_cmd->add_option("--W", sc_o.w, "Coupling width")->required()->check(CLI::PositiveNumber);
  sc_cmd->add_option("--C", sc_o.c, "Checks per block")->required()->check(CLI::PositiveNumber);
  sc_cmd->add_option("--N", sc_o.n, "Circulant size")->required()->check(CLI::PositiveNumber);
  sc_cmd->add_option("--L", sc_o.l, "Coupling multiple")->required()->check(CLI::PositiveNumber);
  sc_cmd->add_option("--shifts", sc_o.shifts, "C x W CPM-shifts matrix (exponent format)")->required();
  sc_cmd->add_option("--offsets", sc_o.offsets, "Offset vector D (default i*W/C)")->delimiter(',');
  sc_cmd->add_flag("--lift", sc_o.lifted, "Write the lifted alist instead of the exponent grid");

  RaOptions ra_o;
  auto* ra_cmd = app.add_subcommand("ra-encode", "Repeat-accumulate encoding with syndrome check");
  ra_cmd->add_option("--h1", ra_o.h1, "Systematic exponent matrix H1")->required();
  ra_cmd->add_option("--message", ra_o.message, "Message bits");
  ra_cmd->add_option("--random", ra_o.random, "Encode this many random messages (uses --seed)");

  GaugeOptions ga_o;
  auto* ga_cmd = app.add_subcommand("gauge", "Cycle gauge, shift invariance, spherical collapse");
  ga_cmd->add_option("input", ga_o.input, "Exponent-matrix file")->required();
  ga_cmd->add_option("--axis", ga_o.axis, "rows or columns")->check(CLI::IsMember({"rows", "columns"}));
  ga_cmd->add_option("--row", ga_o.row, "Row for the shift-invariance check");
  ga_cmd->add_option("--multiplier", ga_o.multiplier, "Multiple m of S added to the row");
  ga_cmd->add_flag("--collapse", ga_o.collapse, "Collapse a radius/phi/theta matrix along the radii");
  ga_cmd->add_option("--collapse-alist", ga_o.collapse_alist, "Write the collapsed binary matrix here");

  RelaxCliOptions re_o;
  auto* re_cmd = app.add_subcommand("relax", "Relax charges on a circle or torus to equilibrium");
  re_cmd->add_option("--input", re_o.input, "Charges CSV (id,q,x,y), torus in row-major lattice order")->required();
  re_cmd->add_option("--geometry", re_o.geometry, "circle or torus")->check(CLI::IsMember({"circle", "torus"}));
  re_cmd->add_option("--circumference", re_o.circumference, "Circle circumference");
  re_cmd->add_option("--lx", re_o.lx, "Torus period along x");
  re_cmd->add_option("--ly", re_o.ly, "Torus period along y");
  re_cmd->add_option("--twist", re_o.twist, "x offset of the torus image one period up in y");
  re_cmd->add_option("--nx", re_o.nx, "Torus lattice width");
  re_cmd->add_option("--ny", re_o.ny, "Torus lattice height");
  re_cmd->add_option("--step", re_o.relax.step, "Initial descent step")->check(CLI::PositiveNumber);
  re_cmd->add_option("--max-iters", re_o.relax.max_iters, "Iteration limit");
  re_cmd->add_option("--tol", re_o.relax.tol, "Equilibrium tolerance on the force max-norm")->check(CLI::PositiveNumber);
  re_cmd->add_option("--trajectory", re_o.trajectory, "Write the trajectory CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (lift_cmd->parsed()) return cmd_lift(g, lift_o, out);
    if (an_cmd->parsed()) return cmd_analyze(g, an_o, out, err);
    if (map_cmd->parsed()) return cmd_map(g, map_o, out);
    if (en_cmd->parsed()) return cmd_energy(g, en_o, out, err);
    if (pa_cmd->parsed()) return cmd_partition(g, pa_o, out);
    if (sc_cmd->parsed()) return cmd_sc(g, sc_o, out);
    if (ra_cmd->parsed()) return cmd_ra(g, ra_o, out);
    if (ga_cmd->parsed()) return cmd_gauge(g, ga_o, out);
    if (re_cmd->parsed()) return cmd_relax(g, re_o, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace qcising::cli
