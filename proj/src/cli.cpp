#include "cliffq/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cliffq/circuit.hpp"
#include "cliffq/gates.hpp"
#include "cliffq/oracle.hpp"
#include "cliffq/real_ga.hpp"
#include "cliffq/witt.hpp"

namespace cliffq {

namespace {

// Reads one signed real starting at pos. A bare sign followed by i counts as 1.
bool read_real(std::string_view s, std::size_t& pos, double& value) {
  double sign = 1.0;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    if (s[pos] == '-') sign = -1.0;
    ++pos;
  }
  if (pos < s.size() && (s[pos] == 'i' || s[pos] == 'j')) {
    value = sign;
    return true;
  }
  if (pos >= s.size() || s[pos] == '+' || s[pos] == '-') return false;
  const char* first = s.data() + pos;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), value);
  if (ec != std::errc{} || ptr == first || !std::isfinite(value)) return false;
  pos += static_cast<std::size_t>(ptr - first);
  value *= sign;
  return true;
}

std::string label(std::size_t index, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int k = 0; k < n; ++k)
    if (index >> (n - 1 - k) & 1) s[static_cast<std::size_t>(k)] = '1';
  return "|" + s + ">";
}

std::string fmt(Complex z) { return format_complex(Complex(z.real() + 0.0, z.imag() + 0.0)); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x + 0.0;
  return os.str();
}

double linf(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size() && k < b.size(); ++k)
    worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

std::vector<double> probabilities(const std::vector<Complex>& amps) {
  std::vector<double> p;
  for (auto a : amps) p.push_back(std::norm(a));
  return p;
}

nlohmann::json complex_array(const std::vector<Complex>& amps) {
  auto arr = nlohmann::json::array();
  for (auto a : amps) arr.push_back({a.real(), a.imag()});
  return arr;
}

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  std::string file;
  std::string backend = "clifford";
  std::string init;
  bool probabilities = false;
  bool show_algebra = false;
  bool json = false;
  double tol = 1e-9;
};

int cmd_run(const RunOptions& o, std::ostream& out) {
  std::ifstream in(o.file);
  if (!in) throw UsageError("cannot read '" + o.file + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  Circuit circuit;
  try {
    circuit = parse_circuit(buf.str());
  } catch (const ParseError& e) {
    throw UsageError(o.file + ": " + e.what());
  }

  std::vector<int> bits(static_cast<std::size_t>(circuit.qubits), 0);
  if (!o.init.empty()) {
    bits = parse_bitstring(o.init);
    if (static_cast<int>(bits.size()) != circuit.qubits)
      throw UsageError("--init has " + std::to_string(bits.size()) + " bits, circuit has " +
                       std::to_string(circuit.qubits) + " qubits");
  }

  const bool want_cl = o.backend != "matrix";
  const bool want_mx = o.backend != "clifford";
  const auto ctx = build_context(circuit.qubits);
  std::vector<Complex> cl, mx;
  if (want_cl) cl = state_to_amplitudes(ctx, run_clifford(circuit, bits));
  if (want_mx) mx = oracle::run_matrix(circuit, bits).amplitudes;
  const bool both = want_cl && want_mx;
  const double dev = both ? linf(cl, mx) : 0.0;
  const bool ok = !both || dev <= o.tol;

  if (o.json) {
    nlohmann::json j;
    j["qubits"] = circuit.qubits;
    j["gates"] = circuit.ops.size();
    std::string init;
    for (int b : bits) init += b ? '1' : '0';
    j["init"] = init;
    j["backend"] = o.backend;
    j["amplitudes"] = nlohmann::json::object();
    j["probabilities"] = nlohmann::json::object();
    if (want_cl) {
      j["amplitudes"]["clifford"] = complex_array(cl);
      j["probabilities"]["clifford"] = probabilities(cl);
    }
    if (want_mx) {
      j["amplitudes"]["matrix"] = complex_array(mx);
      j["probabilities"]["matrix"] = probabilities(mx);
    }
    j["deviation"] = both ? nlohmann::json(dev) : nlohmann::json(nullptr);
    j["tol"] = o.tol;
    j["pass"] = ok;
    out << j.dump(2) << '\n';
    return ok ? kExitOk : kExitVerifyFailed;
  }

  out << "circuit: " << circuit.qubits << " qubits, " << circuit.ops.size() << " gates, initial "
      << label(bits_to_index(bits), circuit.qubits) << '\n';
  if (o.show_algebra) {
    for (const auto& op : circuit.ops) {
      const auto g = build_gate(ctx, op);
      std::string line = op.name;
      for (int w : op.wires) line += " " + std::to_string(w);
      for (double p : op.params) line += " " + fmt(p);
      out << line << '\n';
      out << "  e-basis: " << to_string(g.value()) << '\n';
      if (circuit.qubits <= 8) out << "  witt:    " << to_witt_string(ctx, g.value()) << '\n';
    }
  }
  auto dump = [&](const char* name, const std::vector<Complex>& amps) {
    out << name << " amplitudes:\n";
    for (std::size_t k = 0; k < amps.size(); ++k)
      out << "  " << label(k, circuit.qubits) << "  " << fmt(amps[k]) << '\n';
    if (o.probabilities) {
      out << name << " probabilities:\n";
      const auto p = probabilities(amps);
      for (std::size_t k = 0; k < p.size(); ++k)
        out << "  " << label(k, circuit.qubits) << "  " << fmt(p[k]) << '\n';
    }
  };
  if (want_cl) dump("clifford", cl);
  if (want_mx) dump("matrix", mx);
  if (both)
    out << "deviation " << fmt(dev) << " (tol " << o.tol << ")  " << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kExitOk : kExitVerifyFailed;
}

struct FuzzOptions {
  std::uint64_t seed = 1;
  int circuits = 200;
  int max_qubits = 4;
  int depth = 20;
  bool json = false;
  double tol = 1e-9;
};

int cmd_fuzz(const FuzzOptions& o, std::ostream& out) {
  const auto report = oracle::fuzz(o.seed, o.circuits, {o.max_qubits, o.depth}, o.tol);
  out << (o.json ? report.json() + "\n" : report.text());
  return report.all_pass() ? kExitOk : kExitVerifyFailed;
}

int cmd_bloch(const std::string& alpha_text, const std::string& beta_text, std::ostream& out) {
  const auto alpha = parse_complex(alpha_text);
  const auto beta = parse_complex(beta_text);
  if (!alpha) throw UsageError("cannot parse alpha '" + alpha_text + "'");
  if (!beta) throw UsageError("cannot parse beta '" + beta_text + "'");
  g3::BlochAngles ang;
  try {
    ang = g3::bloch_angles(*alpha, *beta);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto rotated = g3::bloch_verify(ang.theta, ang.phi);
  const auto state = g3::bloch_vector(g3::quat_encode(*alpha, *beta));
  const std::array<double, 3> expected{std::cos(ang.phi) * std::sin(ang.theta),
                                       std::sin(ang.phi) * std::sin(ang.theta),
                                       std::cos(ang.theta)};
  double dev = 0.0;
  for (int k = 0; k < 3; ++k)
    dev = std::max({dev, std::abs(rotated[k] - expected[k]), std::abs(state[k] - expected[k])});
  auto vec = [](const std::array<double, 3>& v) {
    return "(" + fmt(v[0]) + ", " + fmt(v[1]) + ", " + fmt(v[2]) + ")";
  };
  const bool ok = dev <= 1e-12;
  out << "theta " << fmt(ang.theta) << '\n'
      << "phi " << fmt(ang.phi) << '\n'
      << "rotor point " << vec(rotated) << '\n'
      << "state point " << vec(state) << '\n'
      << "sphere point " << vec(expected) << '\n'
      << "deviation " << fmt(dev) << "  " << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_iso_check(std::ostream& out) {
  const auto r = g3::iso_check();
  out << "C2 -> G3 products: " << r.pairs << " basis pairs, max error " << fmt(r.product_error)
      << '\n'
      << "inverse round trip: max error " << fmt(r.inverse_error) << '\n'
      << "dagger -> reverse: max error " << fmt(r.reverse_error) << '\n'
      << "Witt image table: max error " << fmt(r.table_error) << '\n'
      << (r.pass() ? "PASS" : "FAIL") << '\n';
  return r.pass() ? kExitOk : kExitVerifyFailed;
}

struct DumpOptions {
  std::string name;
  int qubits = 0;
  std::vector<int> wires;
  std::vector<double> params;
  bool e_basis = false;
};

int cmd_gate_dump(const DumpOptions& o, std::ostream& out) {
  const GateSpec* spec = find_gate(o.name);
  if (!spec) throw UsageError("unknown gate '" + o.name + "'");
  GateOp op{o.name, o.wires, o.params};
  if (op.wires.empty())
    for (int w = 1; w <= spec->arity; ++w) op.wires.push_back(w);
  int n = o.qubits;
  if (n == 0)
    for (int w : op.wires) n = std::max(n, w);
  if (n > 8) throw UsageError("gate-dump renders at most 8 qubits");
  try {
    validate_op(op, n);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string(e.what()) + " (usage: " + std::string(spec->usage) + ")");
  }
  const auto ctx = build_context(n);
  const auto g = build_gate(ctx, op);
  out << to_witt_string(ctx, g.value()) << '\n';
  if (o.e_basis) out << to_string(g.value()) << '\n';
  return kExitOk;
}

}  // namespace

std::optional<Complex> parse_complex(std::string_view text) {
  std::string s;
  bool gap = false;
  for (char c : text) {
    if (c == ' ' || c == '\t') {
      gap = !s.empty();
      continue;
    }
    // blanks may only separate a sign from its operands
    if (gap && c != '+' && c != '-' && s.back() != '+' && s.back() != '-') return std::nullopt;
    gap = false;
    s += c;
  }
  if (s.empty()) return std::nullopt;
  double re = 0.0, im = 0.0;
  bool have_re = false, have_im = false;
  std::size_t pos = 0;
  for (int term = 0; term < 2 && pos < s.size(); ++term) {
    if (term == 1 && s[pos] != '+' && s[pos] != '-') return std::nullopt;
    double v = 0.0;
    if (!read_real(s, pos, v)) return std::nullopt;
    if (pos < s.size() && (s[pos] == 'i' || s[pos] == 'j')) {
      if (have_im) return std::nullopt;
      im = v;
      have_im = true;
      ++pos;
    } else {
      if (have_re) return std::nullopt;
      re = v;
      have_re = true;
    }
  }
  if (pos != s.size()) return std::nullopt;
  return Complex(re, im);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Clifford-algebra quantum circuit simulator", "cliffq"};
  app.require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Simulate a circuit file");
  run_cmd->add_option("file", run.file, "Circuit file")->required();
  run_cmd->add_option("--backend", run.backend, "clifford, matrix or both")
      ->check(CLI::IsMember({"clifford", "matrix", "both"}));
  run_cmd->add_option("--init", run.init, "Initial bitstring, wire 1 first");
  run_cmd->add_flag("--probabilities", run.probabilities, "Print Born probabilities");
  run_cmd->add_flag("--show-algebra", run.show_algebra, "Print each gate element");
  run_cmd->add_flag("--json", run.json, "JSON output");
  run_cmd->add_option("--tol", run.tol, "Backend agreement tolerance")->check(CLI::PositiveNumber);

  FuzzOptions fz;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Compare both backends on random circuits");
  fuzz_cmd->add_option("--seed", fz.seed, "Base seed");
  fuzz_cmd->add_option("--circuits", fz.circuits, "Number of circuits")->check(CLI::NonNegativeNumber);
  fuzz_cmd->add_option("--max-qubits", fz.max_qubits, "Largest register")->check(CLI::Range(1, 12));
  fuzz_cmd->add_option("--depth", fz.depth, "Largest gate count")->check(CLI::NonNegativeNumber);
  fuzz_cmd->add_flag("--json", fz.json, "JSON output");
  fuzz_cmd->add_option("--tol", fz.tol, "Agreement tolerance")->check(CLI::PositiveNumber);

  std::string alpha, beta;
  auto* bloch_cmd = app.add_subcommand("bloch", "Bloch angles and the rotor check for a qubit");
  bloch_cmd->add_option("alpha", alpha, "Amplitude of |0>, e.g. 0.6 or 0.5+0.5i")->required();
  bloch_cmd->add_option("beta", beta, "Amplitude of |1>")->required();

  auto* iso_cmd = app.add_subcommand("iso-check", "Verify the C2 -> G3 isomorphism");

  DumpOptions dump;
  auto* dump_cmd = app.add_subcommand("gate-dump", "Print the Witt-basis form of a gate");
  dump_cmd->add_option("name", dump.name, "Gate name")->required();
  dump_cmd->add_option("--qubits", dump.qubits, "Register size")->check(CLI::Range(1, 8));
  dump_cmd->add_option("--wires", dump.wires, "Wires, 1-based");
  dump_cmd->add_option("--params", dump.params, "Gate parameters");
  dump_cmd->add_flag("--e-basis", dump.e_basis, "Also print the orthonormal-basis expansion");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run, out);
    if (fuzz_cmd->parsed()) return cmd_fuzz(fz, out);
    if (bloch_cmd->parsed()) return cmd_bloch(alpha, beta, out);
    if (iso_cmd->parsed()) return cmd_iso_check(out);
    if (dump_cmd->parsed()) return cmd_gate_dump(dump, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
  return kExitUsage;
}

}  // namespace cliffq
