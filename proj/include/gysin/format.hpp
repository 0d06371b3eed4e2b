#pragma once

// Human-readable element printing. Burnside classes print as [G/H] (with
// "@x" when the base has more than one point); GW elements print their
// per-orbit classes. Multiples of the unit print as integers.

#include <optional>
#include <string>
#include <vector>

#include "gysin/burnside.hpp"
#include "gysin/gw_functor.hpp"

namespace gysin {

struct FormatOptions {
  bool ascii = false;
};

namespace detail {

inline std::string subgroup_label(const FiniteGroup& g, const Subgroup& h) {
  if (h.size() == 1) return "e";
  if (static_cast<int>(h.size()) == g.order()) return "G";
  std::string s = "{";
  for (std::size_t i = 0; i < h.size(); ++i) s += (i ? "," : "") + std::to_string(h[i]);
  return s + "}";
}

inline std::string with_coeff(std::int64_t c, const std::string& body) {
  if (c == 1) return body;
  if (c == -1) return "-" + body;
  return std::to_string(c) + body;
}

inline std::string join_terms(const std::vector<std::string>& parts) {
  if (parts.empty()) return "0";
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (!parts[i].empty() && parts[i][0] == '-')
      out += " - " + parts[i].substr(1);
    else
      out += " + " + parts[i];
  }
  return out;
}

}  // namespace detail

/// The integer k with a = k * 1, if any.
template <GysinFunctor F>
std::optional<std::int64_t> as_scalar(const F& e, const ElemOf<F>& a, std::int64_t bound = 64) {
  const auto one = e.one(e.base(a));
  for (std::int64_t k = 0; k <= bound; ++k) {
    if (scale(e, one, k) == a) return k;
    if (k && scale(e, one, -k) == a) return -k;
  }
  return std::nullopt;
}

inline std::string format_element(const BurnsideFunctor& e, const BurnsideElem& a, const FormatOptions& = {}) {
  if (auto k = as_scalar(e, a)) return std::to_string(*k);
  std::vector<std::string> parts;
  const bool at = a.base().size() > 1;
  for (const auto& [key, c] : a.terms()) {
    std::string body = "[G/" + detail::subgroup_label(a.base().group(), key.stabilizer) + "]";
    if (at) body += "@" + std::to_string(key.point);
    parts.push_back(detail::with_coeff(c, body));
  }
  return detail::join_terms(parts);
}

template <class F>
  requires std::same_as<typename F::elem_type, GWAlgebraElem>
std::string format_element(const F& e, const GWAlgebraElem& a, const FormatOptions& opt = {}) {
  if (auto k = as_scalar(e, a)) return std::to_string(*k);
  const GWFormat fmt{opt.ascii, false};
  if (a.components.size() == 1) return format_gw(a.components[0], fmt);
  std::string out = "(";
  for (std::size_t i = 0; i < a.components.size(); ++i) out += (i ? ", " : "") + format_gw(a.components[i], fmt);
  return out + ")";
}

}  // namespace gysin
