#include "oracles.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace oracle {

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  std::vector<BigInt> row{1};
  for (unsigned i = 1; i <= n; ++i) {
    std::vector<BigInt> next(i + 1, 1);
    for (unsigned j = 1; j < i; ++j) next[j] = row[j - 1] + row[j];
    row = std::move(next);
  }
  return row[k];
}

namespace {

void extend(unsigned users, unsigned t, unsigned from, std::vector<unsigned>& current,
            std::vector<std::vector<unsigned>>& out) {
  if (current.size() == t) {
    out.push_back(current);
    return;
  }
  for (unsigned u = from; u < users; ++u) {
    current.push_back(u);
    extend(users, t, u + 1, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<std::vector<unsigned>> combinations(unsigned users, unsigned t) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> current;
  extend(users, t, 0, current, out);
  return out;
}

std::size_t position(const std::vector<unsigned>& subset, unsigned users) {
  const auto all = combinations(users, static_cast<unsigned>(subset.size()));
  const auto it = std::find(all.begin(), all.end(), subset);
  if (it == all.end()) throw std::logic_error("subset not found");
  return static_cast<std::size_t>(it - all.begin());
}

Vec block(const Vec& file, std::size_t pieces, std::size_t position) {
  const std::size_t len = file.size() / pieces;
  return Vec(file.begin() + static_cast<std::ptrdiff_t>(position * len),
             file.begin() + static_cast<std::ptrdiff_t>((position + 1) * len));
}

Vec direct_signal(const Files& files, std::uint32_t q, unsigned users, unsigned t,
                  const std::vector<Vec>& queries, const std::vector<unsigned>& s) {
  const std::size_t pieces = combinations(users, t).size();
  Vec y(files.front().size() / pieces, 0);
  std::vector<unsigned> sorted = s;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t at = 0; at < sorted.size(); ++at) {
    const unsigned j = sorted[at];
    std::vector<unsigned> rest;
    for (unsigned u : sorted) {
      if (u != j) rest.push_back(u);
    }
    const std::size_t pos = position(rest, users);
    for (std::size_t n = 0; n < files.size(); ++n) {
      const Vec piece = block(files[n], pieces, pos);
      const std::uint64_t c = at % 2 == 0 ? queries[j][n] : (q - queries[j][n]) % q;
      for (std::size_t i = 0; i < y.size(); ++i) y[i] = static_cast<std::uint32_t>((y[i] + c * piece[i]) % q);
    }
  }
  return y;
}

Vec combine(const Files& files, const Vec& d, std::uint32_t q) {
  Vec out(files.front().size(), 0);
  for (std::size_t n = 0; n < files.size(); ++n) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (out[i] + d[n] * files[n][i]) % q;
  }
  return out;
}

std::size_t brute_rank(const std::vector<Vec>& vectors, std::uint32_t q) {
  std::set<Vec> span;
  const std::size_t len = vectors.front().size();
  Vec coeff(vectors.size(), 0);
  while (true) {
    Vec v(len, 0);
    for (std::size_t r = 0; r < vectors.size(); ++r) {
      for (std::size_t i = 0; i < len; ++i) v[i] = (v[i] + coeff[r] * vectors[r][i]) % q;
    }
    span.insert(v);
    std::size_t r = 0;
    while (r < coeff.size() && ++coeff[r] == q) coeff[r++] = 0;
    if (r == coeff.size()) break;
  }
  std::size_t rank = 0;
  for (std::size_t size = 1; size < span.size(); size *= q) ++rank;
  return rank;
}

Rational corner_load(unsigned users, unsigned t, unsigned rank) {
  BigInt num = 0;
  for (unsigned s = 1; s <= rank && s <= users; ++s) num += binomial(users - s, t);
  return Rational(num, binomial(users, t));
}

Rational lower_envelope(const std::vector<Point>& points, const Rational& m) {
  bool found = false;
  Rational best;
  auto offer = [&](const Rational& v) {
    if (!found || v < best) best = v;
    found = true;
  };
  for (const auto& a : points) {
    if (a.m <= m) offer(a.r);
    for (const auto& b : points) {
      if (a.m < m && m < b.m) offer(a.r + (b.r - a.r) * (m - a.m) / (b.m - a.m));
    }
  }
  if (!found) throw std::logic_error("memory left of every point");
  return best;
}

}  // namespace oracle
