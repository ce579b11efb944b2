#include "acyl/free_word.hpp"

#include <algorithm>

#include "acyl/error.hpp"

namespace acyl::f2 {

bool is_reduced(std::string_view w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i + 1] == inverse(w[i])) return false;
  }
  return true;
}

std::string reduce(std::string_view w) {
  std::string out;
  out.reserve(w.size());
  for (char c : w) {
    if (!out.empty() && out.back() == inverse(c)) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string inverse(std::string_view w) {
  std::string out(w.rbegin(), w.rend());
  for (char& c : out) c = inverse(c);
  return out;
}

std::string multiply(std::string_view u, std::string_view v) {
  std::size_t k = 0;
  while (k < u.size() && k < v.size() && v[k] == inverse(u[u.size() - 1 - k])) ++k;
  std::string out(u.substr(0, u.size() - k));
  out.append(v.substr(k));
  return out;
}

std::string power(std::string_view w, std::int64_t n) {
  std::string base = n < 0 ? inverse(w) : std::string(w);
  std::string out;
  for (std::int64_t i = 0; i < (n < 0 ? -n : n); ++i) out = multiply(out, base);
  return out;
}

std::size_t common_prefix(std::string_view u, std::string_view v) {
  std::size_t k = 0;
  while (k < u.size() && k < v.size() && u[k] == v[k]) ++k;
  return k;
}

std::string parse(std::string_view text, bool require_reduced) {
  if (text == "e" || text.empty()) return {};
  for (char c : text) {
    if (!is_letter(c)) {
      throw Error(ErrorCode::kParse, "invalid letter '" + std::string(1, c) + "' in word " +
                                         std::string(text));
    }
  }
  if (require_reduced && !is_reduced(text)) {
    throw Error(ErrorCode::kInvalidArgument, "word is not reduced: " + std::string(text));
  }
  return reduce(text);
}

std::string display(std::string_view w) { return w.empty() ? std::string("e") : std::string(w); }

std::vector<std::string> words_of_length(int n) {
  std::vector<std::string> level{std::string()};
  for (int k = 0; k < n; ++k) {
    std::vector<std::string> next;
    next.reserve(level.size() * 3 + 1);
    for (const auto& w : level) {
      for (char c : kLetters) {
        if (!w.empty() && c == inverse(w.back())) continue;
        next.push_back(w + c);
      }
    }
    level = std::move(next);
  }
  return level;
}

std::vector<std::string> words_up_to(int n) {
  std::vector<std::string> out;
  for (int k = 0; k <= n; ++k) {
    auto level = words_of_length(k);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::uint64_t count_of_length(int n) {
  if (n == 0) return 1;
  std::uint64_t c = 4;
  for (int k = 1; k < n; ++k) c *= 3;
  return c;
}

Ray Ray::make(std::string stem, std::string period) {
  if (period.empty() || !is_reduced(period)) throw Error(ErrorCode::kInvalidArgument, "ray period must be a nonempty reduced word");
  if (period.size() > 1 && period.front() == inverse(period.back())) {
    throw Error(ErrorCode::kInvalidArgument, "ray period must be cyclically reduced");
  }
  if (!is_reduced(stem)) throw Error(ErrorCode::kInvalidArgument, "ray stem is not reduced");
  for (std::size_t d = 1; d < period.size(); ++d) {
    if (period.size() % d != 0) continue;
    bool repeats = true;
    for (std::size_t i = d; i < period.size() && repeats; ++i) repeats = period[i] == period[i - d];
    if (repeats) {
      period.resize(d);
      break;
    }
  }
  // Cancel the stem against the periodic part, then absorb trailing stem letters into it.
  while (!stem.empty() && stem.back() == inverse(period.front())) {
    stem.pop_back();
    std::rotate(period.begin(), period.begin() + 1, period.end());
  }
  while (!stem.empty() && stem.back() == period.back()) {
    stem.pop_back();
    std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
  }
  return Ray{std::move(stem), std::move(period)};
}

Ray Ray::from_point(std::string_view word) {
  if (word.empty()) throw Error(ErrorCode::kInvalidArgument, "boundary point must be nonempty");
  std::string w = f2::parse(word);
  char t = w.back();
  return make(std::move(w), t);
}

Ray Ray::parse(std::string_view text) {
  auto tilde = text.find('~');
  if (tilde == std::string_view::npos) return from_point(text);
  std::string stem = f2::parse(text.substr(0, tilde));
  std::string period = f2::parse(text.substr(tilde + 1));
  if (period.empty()) throw Error(ErrorCode::kParse, "ray period is empty");
  if (!stem.empty() && stem.back() == inverse(period.front())) {
    throw Error(ErrorCode::kInvalidArgument, "ray is not reduced: " + std::string(text));
  }
  return make(std::move(stem), std::move(period));
}

std::string Ray::prefix(std::size_t n) const {
  std::string out = stem.substr(0, std::min(n, stem.size()));
  while (out.size() < n) out.push_back(at(out.size()));
  return out;
}

std::string Ray::to_string() const { return stem + "~" + period; }

Ray act(std::string_view g, const Ray& r) {
  return Ray::make(multiply(g, r.stem), r.period);
}

std::size_t common_prefix(const Ray& r, const Ray& s, std::size_t cap) {
  std::size_t k = 0;
  while (k < cap && r.at(k) == s.at(k)) ++k;
  return k;
}

bool has_prefix(const Ray& r, std::string_view w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (r.at(i) != w[i]) return false;
  }
  return true;
}

}  // namespace acyl::f2
