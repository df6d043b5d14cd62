#include "vbs/oracle.hpp"

#include <map>
#include <mutex>

#include "vbs/error.hpp"
#include "vbs/primes.hpp"

namespace vbs {

namespace detail {

class BracketSource {
 public:
  virtual ~BracketSource() = default;
  virtual Bracket refine(std::uint64_t n) const = 0;
};

}  // namespace detail

namespace {

class SqrtSource final : public detail::BracketSource {
 public:
  explicit SqrtSource(Integer k) : k_(std::move(k)) { mpz_sqrt(root_.get_mpz_t(), k_.get_mpz_t()); }

  // lo_n = (isqrt(k 4^n) - c 2^n) / 2^n,  hi_n = lo_n + 2^{-n}
  Bracket refine(std::uint64_t n) const override {
    Integer s;
    const Integer scaled = k_ << (2 * n);
    mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
    const Integer den = Integer(1) << n;
    const Integer num = s - (root_ << n);
    return {Rational(num, den), Rational(num + 1, den)};
  }

 private:
  Integer k_;
  Integer root_;
};

class AlphaSource final : public detail::BracketSource {
 public:
  explicit AlphaSource(std::shared_ptr<const AlphaNumber> alpha) : alpha_(std::move(alpha)) {}

  // lo_n = alpha_j, hi_n = beta_{j+1} = alpha_j + P_{j+1}^{1-h(j+1)} for the
  // least j whose tail bound P_{j+1}^{1-h(j+1)} is <= 2^{-n}.
  Bracket refine(std::uint64_t n) const override {
    const Schedule& s = alpha_->schedule();
    for (std::uint64_t j = 0;; ++j) {
      s.form(j + 1);  // ScheduleExhausted past the table
      if (width_small_enough(s, j, n)) return {alpha_->partial(j), alpha_->beta(j + 1)};
    }
  }

 private:
  static bool width_small_enough(const Schedule& s, std::uint64_t j, std::uint64_t n) {
    // Entries too large to materialize make the width far below any 2^{-n}.
    if (!s.materialized(j + 1)) return true;
    const Integer exponent = s.value(j + 1) - 1;
    if (exponent >= Integer(n)) return true;
    const Integer width_inv = ipow(Integer(nth_prime(j + 1)), exponent.get_ui());
    return bit_length(width_inv) >= n + 1;
  }

  std::shared_ptr<const AlphaNumber> alpha_;
};

std::shared_ptr<const AlphaNumber> shared_alpha(std::string_view ref) {
  if (!ref.empty() && ref.front() == '@') {
    return std::make_shared<const AlphaNumber>(resolve_schedule(ref));
  }
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const AlphaNumber>, std::less<>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(ref); it != cache.end()) return it->second;
  auto alpha = std::make_shared<const AlphaNumber>(builtin_schedule(ref));
  cache.emplace(std::string(ref), alpha);
  return alpha;
}

}  // namespace

RealSpec::RealSpec(SqrtSpec s) : kind_(std::move(s)) {
  const Integer& k = std::get<SqrtSpec>(kind_).k;
  if (k < 1) throw Error(Errc::OutOfRange, "sqrt spec needs a positive integer");
  if (mpz_perfect_square_p(k.get_mpz_t()) != 0) {
    throw Error(Errc::OutOfRange, k.get_str() + " is a perfect square");
  }
}

RealSpec::RealSpec(AlphaSpec s) : kind_(std::move(s)) {
  if (std::get<AlphaSpec>(kind_).schedule.empty()) {
    throw Error(Errc::ParseError, "alpha spec needs a schedule id");
  }
}

RealSpec RealSpec::parse(std::string_view text) {
  constexpr std::string_view kSqrt = "sqrt:";
  constexpr std::string_view kAlpha = "alpha:";
  if (text.substr(0, kSqrt.size()) == kSqrt) {
    const auto rest = text.substr(kSqrt.size());
    if (rest.empty() || rest.front() == '-' || rest.front() == '+') {
      throw Error(Errc::ParseError, "bad real spec '" + std::string(text) + "'");
    }
    return RealSpec(SqrtSpec{parse_integer(rest)});
  }
  if (text.substr(0, kAlpha.size()) == kAlpha) {
    const auto rest = text.substr(kAlpha.size());
    for (const char ch : rest) {
      if (ch == ' ' || ch == '\t') throw Error(Errc::ParseError, "whitespace in real spec");
    }
    return RealSpec(AlphaSpec{std::string(rest)});
  }
  throw Error(Errc::ParseError, "bad real spec '" + std::string(text) + "' (want sqrt:<k> or alpha:<id>)");
}

std::string RealSpec::str() const {
  if (const auto* s = std::get_if<SqrtSpec>(&kind_)) return "sqrt:" + s->k.get_str();
  return "alpha:" + std::get<AlphaSpec>(kind_).schedule;
}

BracketingOracle::BracketingOracle(std::shared_ptr<const detail::BracketSource> source,
                                   std::shared_ptr<const RealSpec> spec, bool complemented)
    : source_(std::move(source)), spec_(std::move(spec)), complemented_(complemented) {}

BracketingOracle BracketingOracle::sqrt(const Integer& k) {
  auto spec = std::make_shared<const RealSpec>(SqrtSpec{k});
  return BracketingOracle(std::make_shared<const SqrtSource>(k), std::move(spec), false);
}

BracketingOracle BracketingOracle::alpha(std::shared_ptr<const AlphaNumber> alpha) {
  auto spec = std::make_shared<const RealSpec>(AlphaSpec{alpha->schedule().id()});
  return BracketingOracle(std::make_shared<const AlphaSource>(std::move(alpha)), std::move(spec), false);
}

BracketingOracle BracketingOracle::from_spec(const RealSpec& spec) {
  if (const auto* s = std::get_if<SqrtSpec>(&spec.kind())) return sqrt(s->k);
  const auto& ref = std::get<AlphaSpec>(spec.kind()).schedule;
  return BracketingOracle(std::make_shared<const AlphaSource>(shared_alpha(ref)),
                          std::make_shared<const RealSpec>(spec), false);
}

BracketingOracle BracketingOracle::complement() const {
  return BracketingOracle(source_, spec_, !complemented_);
}

Bracket BracketingOracle::refine(std::uint64_t n) const {
  Bracket b = source_->refine(n);
  if (!complemented_) return b;
  return {Rational(1) - b.upper, Rational(1) - b.lower};
}

std::string BracketingOracle::describe() const {
  return complemented_ ? "1-(" + spec_->str() + ")" : spec_->str();
}

CutSide cut(const BracketingOracle& o, const Rational& q) {
  for (std::uint64_t n = 16;; n *= 2) {
    const Bracket b = o.refine(n);
    if (q <= b.lower) return CutSide::Below;
    if (q >= b.upper) return CutSide::Above;
  }
}

std::vector<Integer> integer_digits(const Integer& c, const Integer& b, std::uint64_t n) {
  std::vector<Integer> digits(n, Integer(0));
  if (b <= 36) {
    const std::string text = c.get_str(static_cast<int>(b.get_ui()));
    if (text.size() > n) throw Error(Errc::OutOfRange, "digit string longer than window");
    const std::size_t pad = n - text.size();
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char ch = text[i];
      digits[pad + i] = (ch >= '0' && ch <= '9') ? ch - '0' : ch - 'a' + 10;
    }
    return digits;
  }
  Integer rest = c;
  for (std::uint64_t i = n; i-- > 0;) {
    mpz_fdiv_qr(rest.get_mpz_t(), digits[i].get_mpz_t(), rest.get_mpz_t(), b.get_mpz_t());
  }
  return digits;
}

DigitWindow real_prefix(const BracketingOracle& o, const Integer& b, std::uint64_t n) {
  require_base(b);
  DigitWindow window{b, 1, {}};
  if (n == 0) return window;
  const Integer scale = ipow(b, n);
  for (std::uint64_t precision = n * bit_length(b) + 4;; precision *= 2) {
    const Bracket br = o.refine(precision);
    Integer cell;
    mpz_fdiv_q(cell.get_mpz_t(), Integer(br.lower.num() * scale).get_mpz_t(), br.lower.den().get_mpz_t());
    if (br.upper.num() * scale <= (cell + 1) * br.upper.den()) {
      window.digits = integer_digits(cell, b, n);
      return window;
    }
  }
}

Integer real_digit_at(const BracketingOracle& o, const Integer& b, std::uint64_t i) {
  if (i == 0) throw Error(Errc::OutOfRange, "digit positions start at 1");
  return real_prefix(o, b, i).digits.back();
}

}  // namespace vbs
