#include "cliffq/witt.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace cliffq {

namespace detail {
struct PrimitiveCache {
  std::once_flag once;
  Multivector value;
};
}  // namespace detail

namespace {

constexpr Complex kI{0.0, 1.0};

double inner_scale(int n) { return std::ldexp(1.0, n); }

void check_same_register(const WittContext& ctx, const SpinorState& x) {
  if (x.qubits() != ctx.qubits())
    throw std::invalid_argument("spinor has " + std::to_string(x.qubits()) +
                                " qubits, context has " + std::to_string(ctx.qubits()));
}

}  // namespace

WittContext build_context(int n) {
  if (n < 1 || n > kMaxQubits)
    throw std::out_of_range("qubit count must be in 1.." + std::to_string(kMaxQubits));
  WittContext ctx;
  ctx.n_ = n;
  const auto sig = ctx.signature();
  for (int j = 1; j <= n; ++j) {
    const auto ej = Multivector::generator(sig, j);
    const auto ejn = Multivector::generator(sig, j + n);
    auto f = 0.5 * (ej - kI * ejn);
    auto fd = 0.5 * (ej + kI * ejn);
    ctx.I_.push_back(f * fd);
    ctx.K_.push_back(fd * f);
    ctx.f_.push_back(std::move(f));
    ctx.fdag_.push_back(std::move(fd));
  }
  ctx.primitive_ = std::make_shared<detail::PrimitiveCache>();
  return ctx;
}

void WittContext::check_wire(int j) const {
  if (j < 1 || j > n_)
    throw std::out_of_range("wire " + std::to_string(j) + " outside 1.." + std::to_string(n_));
}

const Multivector& WittContext::f(int j) const {
  check_wire(j);
  return f_[j - 1];
}
const Multivector& WittContext::fdag(int j) const {
  check_wire(j);
  return fdag_[j - 1];
}
const Multivector& WittContext::I(int j) const {
  check_wire(j);
  return I_[j - 1];
}
const Multivector& WittContext::K(int j) const {
  check_wire(j);
  return K_[j - 1];
}

const Multivector& WittContext::primitive() const {
  std::call_once(primitive_->once, [this] {
    Multivector acc = one();
    for (const auto& idem : I_) acc = acc * idem;
    primitive_->value = std::move(acc);
  });
  return primitive_->value;
}

SpinorState SpinorState::from_multivector(const WittContext& ctx, Multivector value) {
  if (value.signature() != ctx.signature())
    throw std::invalid_argument("multivector does not live in C_{2n} for this register");
  if (!is_spinor(ctx, value))
    throw std::invalid_argument("multivector is not in the spinor ideal C_{2n} I");
  return SpinorState(ctx.qubits(), std::move(value));
}

SpinorState SpinorState::unchecked(int n, Multivector value) {
  return SpinorState(n, std::move(value));
}

std::vector<int> index_to_bits(std::uint64_t index, int n) {
  std::vector<int> bits(n);
  for (int k = 0; k < n; ++k) bits[k] = static_cast<int>(index >> (n - 1 - k) & 1);
  return bits;
}

std::uint64_t bits_to_index(std::span<const int> bits) {
  std::uint64_t index = 0;
  for (int b : bits) index = index << 1 | static_cast<std::uint64_t>(b != 0);
  return index;
}

std::vector<int> parse_bitstring(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty bitstring");
  std::vector<int> bits;
  for (char c : text) {
    if (c != '0' && c != '1') throw std::invalid_argument("bitstring may only contain 0 and 1");
    bits.push_back(c - '0');
  }
  return bits;
}

// Uses (f_k^dagger)^{b_k} I_k per wire: the I_j are even and commute with the
// Witt elements of other wires, and f^dagger I_k = f^dagger.
SpinorState basis_state(const WittContext& ctx, std::span<const int> bits) {
  if (static_cast<int>(bits.size()) != ctx.qubits())
    throw std::invalid_argument("basis state needs " + std::to_string(ctx.qubits()) +
                                " bits, got " + std::to_string(bits.size()));
  Multivector acc = ctx.one();
  for (int k = 1; k <= ctx.qubits(); ++k) {
    const int b = bits[k - 1];
    if (b != 0 && b != 1) throw std::invalid_argument("basis state bits must be 0 or 1");
    acc = acc * (b ? ctx.fdag(k) : ctx.I(k));
  }
  return SpinorState::unchecked(ctx.qubits(), std::move(acc));
}

SpinorState basis_state(const WittContext& ctx, std::uint64_t index) {
  if (ctx.qubits() < 64 && index >> ctx.qubits() != 0)
    throw std::out_of_range("basis index outside the register");
  const auto bits = index_to_bits(index, ctx.qubits());
  return basis_state(ctx, bits);
}

Complex spinor_inner(const WittContext& ctx, const SpinorState& x, const SpinorState& y) {
  check_same_register(ctx, x);
  check_same_register(ctx, y);
  return inner_scale(ctx.qubits()) * hermitian_inner_raw(x.value(), y.value());
}

bool is_spinor(const WittContext& ctx, const Multivector& x, double tol) {
  if (x.signature() != ctx.signature()) return false;
  return approx_equal(x * ctx.primitive(), x, tol);
}

std::vector<Complex> state_to_amplitudes(const WittContext& ctx, const SpinorState& x) {
  check_same_register(ctx, x);
  if (ctx.qubits() > kMaxDenseQubits)
    throw std::out_of_range("dense amplitudes are limited to " +
                            std::to_string(kMaxDenseQubits) + " qubits");
  const std::uint64_t dim = std::uint64_t{1} << ctx.qubits();
  std::vector<Complex> amps(dim);
  for (std::uint64_t k = 0; k < dim; ++k)
    amps[k] = spinor_inner(ctx, basis_state(ctx, k), x);
  return amps;
}

SpinorState amplitudes_to_state(const WittContext& ctx, std::span<const Complex> amplitudes) {
  if (ctx.qubits() > kMaxDenseQubits)
    throw std::out_of_range("dense amplitudes are limited to " +
                            std::to_string(kMaxDenseQubits) + " qubits");
  const std::uint64_t dim = std::uint64_t{1} << ctx.qubits();
  if (amplitudes.size() != dim)
    throw std::invalid_argument("amplitude vector must have length 2^n = " +
                                std::to_string(dim));
  Multivector acc(ctx.signature());
  for (std::uint64_t k = 0; k < dim; ++k)
    if (amplitudes[k] != Complex{}) acc += amplitudes[k] * basis_state(ctx, k).value();
  return SpinorState::unchecked(ctx.qubits(), std::move(acc));
}

// ---------------------------------------------------------------------------
// Witt-basis rendering

Multivector witt_word(const WittContext& ctx, std::span<const WittSymbol> word) {
  if (static_cast<int>(word.size()) != ctx.qubits())
    throw std::invalid_argument("Witt word length must equal the qubit count");
  Multivector acc = ctx.one();
  for (int k = 1; k <= ctx.qubits(); ++k) {
    switch (word[k - 1]) {
      case WittSymbol::One: break;
      case WittSymbol::Empty: acc = acc * ctx.I(k); break;
      case WittSymbol::Occupied: acc = acc * ctx.K(k); break;
      case WittSymbol::Annihilate: acc = acc * ctx.f(k); break;
      case WittSymbol::Create: acc = acc * ctx.fdag(k); break;
    }
  }
  return acc;
}

std::vector<WittTerm> witt_decompose(const WittContext& ctx, const Multivector& x, double tol) {
  const int n = ctx.qubits();
  if (n > 8) throw std::out_of_range("Witt decomposition is limited to 8 qubits");
  if (x.signature() != ctx.signature())
    throw std::invalid_argument("multivector does not live in C_{2n} for this register");
  static constexpr WittSymbol kBasis[] = {WittSymbol::Empty, WittSymbol::Occupied,
                                          WittSymbol::Annihilate, WittSymbol::Create};
  // Words of this basis are mutually orthogonal with [W^dagger W]_0 = 2^-n.
  std::vector<WittTerm> out;
  const std::uint64_t count = std::uint64_t{1} << (2 * n);
  std::vector<WittSymbol> word(n);
  for (std::uint64_t code = 0; code < count; ++code) {
    for (int k = 0; k < n; ++k) word[k] = kBasis[code >> (2 * (n - 1 - k)) & 3];
    const Complex c = inner_scale(n) * hermitian_inner_raw(witt_word(ctx, word), x);
    if (std::abs(c) > tol) out.push_back({c, word});
  }
  return out;
}

namespace {

struct RenderItem {
  Complex coef;
  std::string body;  // empty for a scalar
};

std::string format_real(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

bool is_real_coef(Complex c) { return std::abs(c.imag()) <= 1e-12 * std::max(1.0, std::abs(c)); }
bool is_imag_coef(Complex c) { return std::abs(c.real()) <= 1e-12 * std::max(1.0, std::abs(c)); }

// Returns (negative, magnitude text). Magnitude text is empty for unit coefficients
// attached to a non-empty body.
std::pair<bool, std::string> split_coef(Complex c, bool has_body) {
  if (is_real_coef(c)) {
    const double v = c.real();
    const double a = std::abs(v);
    if (has_body && std::abs(a - 1.0) < 1e-12) return {v < 0, ""};
    return {v < 0, format_real(a)};
  }
  if (is_imag_coef(c)) {
    const double v = c.imag();
    const double a = std::abs(v);
    if (std::abs(a - 1.0) < 1e-12) return {v < 0, "i"};
    return {v < 0, format_real(a) + "i"};
  }
  std::ostringstream os;
  os.precision(6);
  os << '(' << c.real() << (c.imag() < 0 ? " − " : " + ") << std::abs(c.imag()) << "i)";
  return {false, os.str()};
}

std::string join_items(const std::vector<RenderItem>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& it = items[i];
    auto [negative, mag] = split_coef(it.coef, !it.body.empty());
    std::string text = mag;
    if (!it.body.empty()) text += (text.empty() ? "" : " ") + it.body;
    if (i == 0)
      out += (negative ? "−" : "") + text;
    else
      out += (negative ? " − " : " + ") + text;
  }
  return out;
}

std::string symbol_text(WittSymbol s, int wire) {
  const std::string k = std::to_string(wire);
  switch (s) {
    case WittSymbol::Annihilate: return "f" + k;
    case WittSymbol::Create: return "f" + k + "†";
    case WittSymbol::Occupied: return "f" + k + "† f" + k;
    case WittSymbol::Empty: return "f" + k + " f" + k + "†";
    case WittSymbol::One: break;
  }
  return "";
}

// Groups terms by their symbol on `wire` and factors that symbol out. Scalars
// lead at the top level and trail inside parentheses.
std::vector<RenderItem> render_items(const std::vector<WittTerm>& terms, std::size_t wire,
                                     bool nested) {
  if (terms.empty()) return {};
  if (wire == terms.front().word.size()) {
    Complex sum{};
    for (const auto& t : terms) sum += t.coef;
    return {{sum, ""}};
  }
  std::map<WittSymbol, std::vector<WittTerm>> groups;
  for (const auto& t : terms) groups[t.word[wire]].push_back(t);

  std::vector<RenderItem> scalar_group;
  std::vector<RenderItem> others;
  for (WittSymbol s : {WittSymbol::Annihilate, WittSymbol::Create, WittSymbol::Occupied,
                       WittSymbol::Empty, WittSymbol::One}) {
    auto it = groups.find(s);
    if (it == groups.end()) continue;
    if (s == WittSymbol::One) {
      scalar_group = render_items(it->second, wire + 1, nested);
      continue;
    }
    auto rest = render_items(it->second, wire + 1, true);
    const std::string sym = symbol_text(s, static_cast<int>(wire) + 1);
    if (rest.size() == 1) {
      others.push_back({rest[0].coef, sym + (rest[0].body.empty() ? "" : " " + rest[0].body)});
      continue;
    }
    const bool all_negative = std::all_of(rest.begin(), rest.end(), [](const RenderItem& r) {
      return is_real_coef(r.coef) && r.coef.real() < 0;
    });
    if (all_negative)
      for (auto& r : rest) r.coef = -r.coef;
    others.push_back({all_negative ? -1.0 : 1.0, sym + " (" + join_items(rest) + ")"});
  }
  std::vector<RenderItem> out;
  if (!nested) out.insert(out.end(), scalar_group.begin(), scalar_group.end());
  out.insert(out.end(), others.begin(), others.end());
  if (nested) out.insert(out.end(), scalar_group.begin(), scalar_group.end());
  return out;
}

}  // namespace

std::string to_witt_string(const WittContext& ctx, const Multivector& x) {
  const int n = ctx.qubits();
  // Rewrite f f^dagger = 1 - f^dagger f on every wire.
  std::map<std::vector<WittSymbol>, Complex> coords;
  for (const auto& t : witt_decompose(ctx, x)) coords[t.word] += t.coef;
  for (int k = 0; k < n; ++k) {
    std::map<std::vector<WittSymbol>, Complex> next;
    for (const auto& [word, c] : coords) {
      if (word[k] != WittSymbol::Empty) {
        next[word] += c;
        continue;
      }
      auto one = word;
      one[k] = WittSymbol::One;
      auto occ = word;
      occ[k] = WittSymbol::Occupied;
      next[one] += c;
      next[occ] -= c;
    }
    coords = std::move(next);
  }
  std::vector<WittTerm> terms;
  for (const auto& [word, c] : coords)
    if (std::abs(c) > 1e-12) terms.push_back({c, word});
  if (terms.empty()) return "0";
  return join_items(render_items(terms, 0, false));
}

}  // namespace cliffq
