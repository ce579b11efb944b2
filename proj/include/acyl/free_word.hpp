#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace acyl::f2 {

// Elements of the free group F(a, b) as freely reduced strings over {a, A, b, B},
// where A = a^-1 and B = b^-1. The empty string is the identity.

inline constexpr char kLetters[4] = {'a', 'A', 'b', 'B'};

inline bool is_letter(char c) { return c == 'a' || c == 'A' || c == 'b' || c == 'B'; }
inline char inverse(char c) { return c == 'a' ? 'A' : c == 'A' ? 'a' : c == 'b' ? 'B' : 'b'; }

bool is_reduced(std::string_view w);
std::string reduce(std::string_view w);
std::string inverse(std::string_view w);
/// Reduced form of u * v.
std::string multiply(std::string_view u, std::string_view v);
/// w^n for any integer n.
std::string power(std::string_view w, std::int64_t n);
std::size_t common_prefix(std::string_view u, std::string_view v);

/// Parses a word; "e" and "" denote the identity. Throws on foreign letters or
/// when the word is not reduced and `require_reduced` is set.
std::string parse(std::string_view text, bool require_reduced = true);
/// "e" for the identity, the word itself otherwise.
std::string display(std::string_view w);

/// Reduced words of exactly length n, in shortlex order over a < A < b < B.
std::vector<std::string> words_of_length(int n);
/// Reduced words of length at most n, shortest first.
std::vector<std::string> words_up_to(int n);
/// Number of reduced words of length exactly n.
std::uint64_t count_of_length(int n);

/// Eventually periodic reduced ray stem * period^infinity, a point of the boundary of F2.
///
/// Normal form: the period is primitive and cyclically reduced and the stem does not
/// end with the last letter of the period, so two rays are equal as boundary points
/// iff their normal forms coincide.
struct Ray {
  std::string stem;
  std::string period = "a";

  static Ray make(std::string stem, std::string period);
  static Ray make(std::string stem, char tail) { return make(std::move(stem), std::string(1, tail)); }
  /// Ray standing for the depth-D model point `word`: word * last(word)^infinity.
  static Ray from_point(std::string_view word);
  /// Accepts "stem~period" or a plain nonempty word (read as from_point).
  static Ray parse(std::string_view text);

  char at(std::size_t i) const {
    return i < stem.size() ? stem[i] : period[(i - stem.size()) % period.size()];
  }
  std::string prefix(std::size_t n) const;
  std::string to_string() const;

  friend bool operator==(const Ray&, const Ray&) = default;
  friend auto operator<=>(const Ray&, const Ray&) = default;
};

/// Image of a ray under left multiplication by g.
Ray act(std::string_view g, const Ray& r);
/// Length of the longest common prefix, capped at `cap`.
std::size_t common_prefix(const Ray& r, const Ray& s, std::size_t cap);
/// True iff the ray starts with `w`.
bool has_prefix(const Ray& r, std::string_view w);

}  // namespace acyl::f2
