#pragma once

// Positive decreasing scale sequences (xi_k)_{k>=1} for the lifted operator.
// Three parseable kinds: constant, inverse square root, and an explicit
// head list followed by a constant tail. A fourth, geometric kind exists
// only through the API for square-summable cases; the parser rejects
// anything but the three config forms.

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace edelstein {

class XiSchedule {
 public:
  enum class Kind { Constant, InverseSqrt, ExplicitList, Geometric };

  static XiSchedule constant(double c) {
    require_positive(c, "constant value");
    XiSchedule s;
    s.kind_ = Kind::Constant;
    s.scale_ = c;
    return s;
  }

  static XiSchedule inverse_sqrt() {
    XiSchedule s;
    s.kind_ = Kind::InverseSqrt;
    return s;
  }

  static XiSchedule explicit_list(std::vector<double> head, double tail) {
    if (head.empty()) throw std::invalid_argument("XiSchedule: empty head list");
    for (std::size_t i = 0; i < head.size(); ++i) {
      require_positive(head[i], "list entry");
      if (i > 0 && head[i] > head[i - 1])
        throw std::invalid_argument("XiSchedule: list must be nonincreasing");
    }
    require_positive(tail, "tail constant");
    if (tail > head.back())
      throw std::invalid_argument("XiSchedule: tail constant must not exceed the last list entry");
    XiSchedule s;
    s.kind_ = Kind::ExplicitList;
    s.head_ = std::move(head);
    s.scale_ = tail;
    return s;
  }

  /// xi_k = ratio^k with 0 < ratio < 1; square-summable. Not parseable.
  static XiSchedule geometric(double ratio) {
    if (!std::isfinite(ratio) || !(ratio > 0.0) || !(ratio < 1.0))
      throw std::invalid_argument("XiSchedule: geometric ratio must lie in (0, 1)");
    XiSchedule s;
    s.kind_ = Kind::Geometric;
    s.scale_ = ratio;
    return s;
  }

  /// "constant:C" | "invsqrt" | "list:a,b,...;tail:t" (tail defaults to the
  /// last list entry). Anything else is rejected.
  static XiSchedule parse(std::string_view text) {
    const std::string spec(text);
    if (spec == "invsqrt") return inverse_sqrt();
    if (spec.rfind("constant:", 0) == 0) return constant(parse_double(spec.substr(9)));
    if (spec.rfind("list:", 0) == 0) {
      std::string body = spec.substr(5);
      double tail = std::numeric_limits<double>::quiet_NaN();
      const auto semi = body.find(';');
      if (semi != std::string::npos) {
        std::string tail_part = body.substr(semi + 1);
        body = body.substr(0, semi);
        if (tail_part.rfind("tail:", 0) != 0)
          throw std::invalid_argument("XiSchedule: expected ';tail:...' in list spec");
        tail = parse_double(tail_part.substr(5));
      }
      std::vector<double> head;
      std::stringstream ss(body);
      std::string item;
      while (std::getline(ss, item, ',')) head.push_back(parse_double(item));
      if (head.empty()) throw std::invalid_argument("XiSchedule: empty list spec");
      if (std::isnan(tail)) tail = head.back();
      return explicit_list(std::move(head), tail);
    }
    throw std::invalid_argument("XiSchedule: unrecognized schedule spec: " + spec);
  }

  double xi(int k) const {
    if (k < 1) throw std::invalid_argument("XiSchedule: index must be >= 1");
    switch (kind_) {
      case Kind::Constant:
        return scale_;
      case Kind::InverseSqrt:
        return 1.0 / std::sqrt(static_cast<double>(k));
      case Kind::ExplicitList:
        return static_cast<std::size_t>(k) <= head_.size() ? head_[static_cast<std::size_t>(k) - 1]
                                                           : scale_;
      case Kind::Geometric:
        return std::pow(scale_, k);
    }
    return 0.0;  // unreachable
  }

  Kind kind() const { return kind_; }
  bool square_summable() const { return kind_ == Kind::Geometric; }

  /// Certified bound on sum_{k>K} xi_k^2; infinity unless square-summable.
  double xi_sq_tail(int K) const {
    if (K < 0) throw std::invalid_argument("XiSchedule: tail index must be >= 0");
    if (kind_ != Kind::Geometric) return std::numeric_limits<double>::infinity();
    const double r2 = scale_ * scale_;
    return std::pow(r2, K + 1) / (1.0 - r2) * (1.0 + 1e-13);
  }

  std::string to_string() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind_) {
      case Kind::Constant:
        os << "constant:" << scale_;
        break;
      case Kind::InverseSqrt:
        os << "invsqrt";
        break;
      case Kind::ExplicitList: {
        os << "list:";
        for (std::size_t i = 0; i < head_.size(); ++i) os << (i ? "," : "") << head_[i];
        os << ";tail:" << scale_;
        break;
      }
      case Kind::Geometric:
        os << "geometric:" << scale_;
        break;
    }
    return os.str();
  }

 private:
  XiSchedule() = default;

  static void require_positive(double v, const char* what) {
    if (!std::isfinite(v) || !(v > 0.0))
      throw std::invalid_argument(std::string("XiSchedule: ") + what + " must be positive and finite");
  }

  static double parse_double(const std::string& text) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("XiSchedule: bad number: " + text);
    }
    if (pos != text.size()) throw std::invalid_argument("XiSchedule: bad number: " + text);
    return v;
  }

  Kind kind_ = Kind::Constant;
  double scale_ = 1.0;        // constant value | list tail | geometric ratio
  std::vector<double> head_;  // ExplicitList only
};

}  // namespace edelstein
