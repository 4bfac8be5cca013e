#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lexcat {

// Stable error codes; the CLI prints these verbatim.
enum class ErrorCode {
  malformed,
  no_terminal,
  no_pullback,
  no_coproduct,
  no_coequalizer,
  not_monic,
  not_enumerable,
  cap_exceeded,
  not_groupoid,
  saturation_bound,
  precondition,
  cone_mismatch,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::malformed: return "E_MALFORMED";
    case ErrorCode::no_terminal: return "E_NO_TERMINAL";
    case ErrorCode::no_pullback: return "E_NO_PULLBACK";
    case ErrorCode::no_coproduct: return "E_NO_COPRODUCT";
    case ErrorCode::no_coequalizer: return "E_NO_COEQUALIZER";
    case ErrorCode::not_monic: return "E_NOT_MONIC";
    case ErrorCode::not_enumerable: return "E_NOT_ENUMERABLE";
    case ErrorCode::cap_exceeded: return "E_CAP_EXCEEDED";
    case ErrorCode::not_groupoid: return "E_NOT_GROUPOID";
    case ErrorCode::saturation_bound: return "E_SATURATION_BOUND";
    case ErrorCode::precondition: return "E_PRECONDITION";
    case ErrorCode::cone_mismatch: return "E_CONE_MISMATCH";
  }
  return "E_UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Errors meaning "the instance has no such (co)limit", as opposed to misuse.
inline bool is_missing_universal(const Error& e) {
  switch (e.code()) {
    case ErrorCode::no_terminal:
    case ErrorCode::no_pullback:
    case ErrorCode::no_coproduct:
    case ErrorCode::no_coequalizer: return true;
    default: return false;
  }
}

/// Upper bound on the number of candidates any single enumeration may visit.
/// Overridden by the LEXCAT_CAP environment variable.
inline std::size_t enumeration_cap() {
  static const std::size_t cap = [] {
    if (const char* env = std::getenv("LEXCAT_CAP")) {
      try {
        return static_cast<std::size_t>(std::stoull(env));
      } catch (...) {
      }
    }
    return static_cast<std::size_t>(1'000'000);
  }();
  return cap;
}

template <class C>
using Obj = typename C::Object;
template <class C>
using Mor = typename C::Morphism;

// Callback used by the streaming enumerations: return false to stop.
template <class C>
using MorphismVisitor = std::function<bool(const Mor<C>&)>;

/// A category with enumerable hom-sets.  `equal` is semantic equality of
/// morphisms (strict equality for most carriers, homotopy for E2).
template <class C>
concept Category = requires(const C& c, const Obj<C>& x, const Mor<C>& f, MorphismVisitor<C> visit) {
  requires std::totally_ordered<Obj<C>>;
  { c.src(f) } -> std::convertible_to<Obj<C>>;
  { c.tgt(f) } -> std::convertible_to<Obj<C>>;
  { c.identity(x) } -> std::convertible_to<Mor<C>>;
  { c.compose(f, f) } -> std::convertible_to<Mor<C>>;
  { c.equal(f, f) } -> std::convertible_to<bool>;
  { c.hom(x, x) } -> std::same_as<std::vector<Mor<C>>>;
  { c.describe(x) } -> std::convertible_to<std::string>;
  { c.describe(f) } -> std::convertible_to<std::string>;
  { c.for_each_lift(f, f, visit) } -> std::convertible_to<bool>;
};

/// Chosen pullback of the cospan f: X -> Z <- Y :g.  `left` lands in X.
template <class C>
struct Pullback {
  Obj<C> apex;
  Mor<C> left;
  Mor<C> right;
  Mor<C> f;
  Mor<C> g;
};

template <class C>
concept LexCategory = Category<C> && requires(const C& c, const Obj<C>& x, const Mor<C>& f,
                                              const Pullback<C>& pb) {
  { c.terminal() } -> std::convertible_to<Obj<C>>;
  { c.to_terminal(x) } -> std::convertible_to<Mor<C>>;
  { c.pullback(f, f) } -> std::same_as<Pullback<C>>;
  { c.pullback_mediator(pb, f, f) } -> std::convertible_to<Mor<C>>;
};

template <class C>
struct Coproduct {
  Obj<C> object;
  std::vector<Mor<C>> injections;
};

template <class C>
concept HasCoproducts = Category<C> && requires(const C& c, const Obj<C>& x, const Coproduct<C>& cp,
                                                const std::vector<Obj<C>>& xs,
                                                const std::vector<Mor<C>>& fs) {
  { c.initial() } -> std::convertible_to<Obj<C>>;
  { c.from_initial(x) } -> std::convertible_to<Mor<C>>;
  { c.coproduct(xs) } -> std::same_as<Coproduct<C>>;
  { c.copair(cp, fs) } -> std::convertible_to<Mor<C>>;
};

/// Coequalizer of the face pair of an equivalence 2-groupoid.
template <class C>
struct Quotient {
  Obj<C> object;
  Mor<C> projection;
};

template <class C>
concept HasQuotients = Category<C> && requires(const C& c, const Mor<C>& f, const Quotient<C>& q) {
  { c.quotient(f, f, f) } -> std::same_as<Quotient<C>>;
  { c.quotient_mediator(q, f) } -> std::convertible_to<Mor<C>>;
};

// Streaming helpers over the lift primitive.

template <Category C>
std::optional<Mor<C>> first_lift(const C& c, const Mor<C>& u, const Mor<C>& m) {
  std::optional<Mor<C>> out;
  c.for_each_lift(u, m, [&](const Mor<C>& h) {
    out = h;
    return false;
  });
  return out;
}

template <Category C>
std::vector<Mor<C>> all_lifts(const C& c, const Mor<C>& u, const Mor<C>& m) {
  std::vector<Mor<C>> out;
  c.for_each_lift(u, m, [&](const Mor<C>& h) {
    out.push_back(h);
    if (out.size() > enumeration_cap()) throw Error(ErrorCode::cap_exceeded, "lift enumeration");
    return true;
  });
  return out;
}

template <Category C>
std::size_t count_lifts(const C& c, const Mor<C>& u, const Mor<C>& m, std::size_t stop_after) {
  std::size_t n = 0;
  c.for_each_lift(u, m, [&](const Mor<C>&) { return ++n < stop_after; });
  return n;
}

/// Lifts by filtering a hom-set; the fallback for search-based carriers.
template <Category C>
bool lifts_by_filter(const C& c, const Mor<C>& u, const Mor<C>& m, const MorphismVisitor<C>& visit) {
  for (const auto& h : c.hom(c.src(u), c.src(m)))
    if (c.equal(c.compose(m, h), u) && !visit(h)) return false;
  return true;
}

// Row-major odometer over a product of finite ranges; last digit fastest, so
// visiting order is lexicographic.
class Odometer {
 public:
  explicit Odometer(std::vector<std::size_t> radices) : radices_(std::move(radices)), digits_(radices_.size(), 0) {
    for (auto r : radices_)
      if (r == 0) done_ = true;
  }
  [[nodiscard]] bool done() const { return done_; }
  [[nodiscard]] const std::vector<std::size_t>& digits() const { return digits_; }
  void next() {
    for (std::size_t i = digits_.size(); i-- > 0;) {
      if (++digits_[i] < radices_[i]) return;
      digits_[i] = 0;
    }
    done_ = true;
  }

 private:
  std::vector<std::size_t> radices_;
  std::vector<std::size_t> digits_;
  bool done_ = false;
};

inline std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace lexcat
