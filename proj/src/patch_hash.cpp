#include <algorithm>
#include <random>
#include <thread>
#include <unordered_map>

#include "lrcut/error.hpp"
#include "lrcut/window.hpp"

namespace lrcut {

namespace {

constexpr std::uint64_t kMod = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(p & kMod);
  std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
  std::uint64_t s = lo + hi;
  return s >= kMod ? s - kMod : s;
}

std::uint64_t addmod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= kMod ? s - kMod : s;
}

std::uint64_t submod(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kMod - b; }

std::uint64_t from_signed(long v) {
  long r = v % static_cast<long>(kMod);
  if (r < 0) r += static_cast<long>(kMod);
  return static_cast<std::uint64_t>(r);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, b);
    b = mulmod(b, b);
    e >>= 1;
  }
  return r;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// One polynomial hash family.
struct Family {
  std::vector<std::uint64_t> base;      // per axis
  std::vector<std::uint64_t> base_inv;  // per axis
  std::vector<std::uint64_t> base_top;  // base^(2r)
  std::vector<std::uint64_t> k;         // per internal coordinate
  std::uint64_t salt = 0;

  Family(std::mt19937_64& rng, std::size_t d, std::size_t codim, int r) {
    auto draw = [&] { return 2 + rng() % (kMod - 3); };
    for (std::size_t a = 0; a < d; ++a) {
      base.push_back(draw());
      base_inv.push_back(powmod(base.back(), kMod - 2));
      base_top.push_back(powmod(base.back(), static_cast<std::uint64_t>(2 * r)));
    }
    for (std::size_t i = 0; i < codim; ++i) k.push_back(draw());
    salt = rng();
  }

  // F = psi(mask) + K.b, with b the componentwise minimum of the lifts.
  std::uint64_t cell_value(const long* lifts, std::size_t count, std::size_t codim) const {
    if (count == 0) return splitmix(salt) % kMod;
    long b[16];
    for (std::size_t i = 0; i < codim; ++i) {
      b[i] = lifts[i];
      for (std::size_t c = 1; c < count; ++c) b[i] = std::min(b[i], lifts[c * codim + i]);
    }
    std::uint64_t h = splitmix(salt ^ count);
    for (std::size_t c = 0; c < count; ++c)
      for (std::size_t i = 0; i < codim; ++i)
        h = splitmix(h ^ static_cast<std::uint64_t>(lifts[c * codim + i] - b[i] + 1000003 * static_cast<long>(i)));
    std::uint64_t v = h % kMod;
    for (std::size_t i = 0; i < codim; ++i) v = addmod(v, mulmod(k[i], from_signed(b[i])));
    return v;
  }

  std::uint64_t offset_weight(const long* m0, std::size_t codim) const {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < codim; ++i) v = addmod(v, mulmod(k[i], from_signed(m0[i])));
    return v;
  }
};

// Sliding window sum along one axis of a row-major box with `side` cells
// per axis: out(y) = sum_{t=0}^{2r} base^t in(y - r + t along axis).
void slide_axis(std::vector<std::uint64_t>& a, std::size_t dims, std::size_t axis, long side, int r,
                std::uint64_t base, std::uint64_t base_inv, std::uint64_t base_top, std::vector<std::uint64_t>& line) {
  std::size_t stride = 1;
  for (std::size_t q = axis + 1; q < dims; ++q) stride *= static_cast<std::size_t>(side);
  const std::size_t total = a.size();
  const std::size_t block = stride * static_cast<std::size_t>(side);
  const auto w = static_cast<long>(2 * r + 1);
  line.resize(static_cast<std::size_t>(side));
  for (std::size_t start = 0; start < total; start += block) {
    for (std::size_t inner = 0; inner < stride; ++inner) {
      const std::size_t base_idx = start + inner;
      for (long t = 0; t < side; ++t) line[static_cast<std::size_t>(t)] = a[base_idx + static_cast<std::size_t>(t) * stride];
      if (side < w) continue;
      std::uint64_t acc = 0, pw = 1;
      for (long t = 0; t < w; ++t) {
        acc = addmod(acc, mulmod(pw, line[static_cast<std::size_t>(t)]));
        pw = mulmod(pw, base);
      }
      for (long y = r; y + r < side; ++y) {
        a[base_idx + static_cast<std::size_t>(y) * stride] = acc;
        if (y + r + 1 < side) {
          acc = mulmod(base_inv, submod(acc, line[static_cast<std::size_t>(y - r)]));
          acc = addmod(acc, mulmod(base_top, line[static_cast<std::size_t>(y + r + 1)]));
        }
      }
    }
  }
}

struct Key {
  std::uint64_t a, b;
  bool operator==(const Key& o) const { return a == o.a && b == o.b; }
};
struct KeyHash {
  std::size_t operator()(const Key& k) const { return static_cast<std::size_t>(k.a ^ (k.b * 0x9e3779b97f4a7c15ULL)); }
};

}  // namespace

FrequencyReport sampled_frequencies(const Scheme& s, int r, long sample_radius, unsigned threads) {
  if (r < 0 || sample_radius < 0) fail("BadParams", "radii must be nonnegative");
  const std::size_t d = s.d, codim = s.codim();
  if (codim > 16) fail("BadParams", "codimension too large");
  AcceptanceOracle oracle(s);
  const long big = sample_radius + r;
  const long side = 2 * big + 1;
  std::size_t slice = 1;
  for (std::size_t a = 1; a < d; ++a) slice *= static_cast<std::size_t>(side);
  threads = std::max(1u, threads);

  std::mt19937_64 rng(0x5eed1234abcdULL + static_cast<std::uint64_t>(r));
  Family fam[2] = {Family(rng, d, codim, r), Family(rng, d, codim, r)};

  struct SliceLifts {
    std::vector<std::uint32_t> start;
    std::vector<long> flat;
  };
  const std::size_t ring_l = static_cast<std::size_t>(2 * r + 1);
  const std::size_t ring_s = static_cast<std::size_t>(2 * r + 2);
  std::vector<SliceLifts> lift_ring(ring_l);
  // per ring slot: F0, G0, F1, G1
  std::vector<std::array<std::vector<std::uint64_t>, 4>> sums(ring_s);
  std::array<std::vector<std::uint64_t>, 4> total;
  for (auto& t : total) t.assign(slice, 0);
  std::vector<std::uint64_t> line;

  auto cell_coords = [&](std::size_t idx, long x, long* n) {
    n[0] = x - big;
    for (std::size_t a = d; a-- > 1;) {
      n[a] = static_cast<long>(idx % static_cast<std::size_t>(side)) - big;
      idx /= static_cast<std::size_t>(side);
    }
  };

  auto compute_lifts = [&](long x, SliceLifts& out) {
    std::vector<std::vector<long>> flats(threads);
    std::vector<std::vector<std::uint32_t>> counts(threads);
    auto work = [&](unsigned t) {
      std::size_t lo = slice * t / threads, hi = slice * (t + 1) / threads;
      long n[64];
      for (std::size_t idx = lo; idx < hi; ++idx) {
        cell_coords(idx, x, n);
        counts[t].push_back(static_cast<std::uint32_t>(oracle.lifts_flat(n, flats[t])));
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
      for (auto& th : pool) th.join();
    }
    out.start.assign(1, 0);
    out.flat.clear();
    for (unsigned t = 0; t < threads; ++t) {
      for (auto c : counts[t]) out.start.push_back(out.start.back() + c);
      out.flat.insert(out.flat.end(), flats[t].begin(), flats[t].end());
    }
  };

  std::unordered_map<Key, std::size_t, KeyHash> index;
  FrequencyReport rep;
  rep.r = r;
  rep.sample_radius = sample_radius;
  const auto center_lo = static_cast<long>(r), center_hi = side - 1 - r;

  for (long x = 0; x < side; ++x) {
    SliceLifts& sl = lift_ring[static_cast<std::size_t>(x) % ring_l];
    compute_lifts(x, sl);
    auto& cur = sums[static_cast<std::size_t>(x) % ring_s];
    for (auto& arr : cur) arr.resize(slice);
    for (std::size_t idx = 0; idx < slice; ++idx) {
      std::uint32_t c = sl.start[idx + 1] - sl.start[idx];
      const long* lp = sl.flat.data() + static_cast<std::size_t>(sl.start[idx]) * codim;
      for (int f = 0; f < 2; ++f) {
        cur[static_cast<std::size_t>(2 * f)][idx] = fam[f].cell_value(lp, c, codim);
        cur[static_cast<std::size_t>(2 * f + 1)][idx] = c > 0 ? 1 : 0;
      }
    }
    for (std::size_t a = 1; a < d; ++a)
      for (int f = 0; f < 2; ++f)
        for (int g = 0; g < 2; ++g)
          slide_axis(cur[static_cast<std::size_t>(2 * f + g)], d - 1, a - 1, side, r, fam[f].base[a], fam[f].base_inv[a],
                     fam[f].base_top[a], line);

    if (x < 2 * r) continue;
    if (x == 2 * r) {
      for (int q = 0; q < 4; ++q) {
        const Family& fm = fam[q / 2];
        std::fill(total[static_cast<std::size_t>(q)].begin(), total[static_cast<std::size_t>(q)].end(), 0);
        std::uint64_t pw = 1;
        for (long t = 0; t <= 2 * r; ++t) {
          const auto& src = sums[static_cast<std::size_t>(t) % ring_s][static_cast<std::size_t>(q)];
          for (std::size_t idx = 0; idx < slice; ++idx)
            total[static_cast<std::size_t>(q)][idx] = addmod(total[static_cast<std::size_t>(q)][idx], mulmod(pw, src[idx]));
          pw = mulmod(pw, fm.base[0]);
        }
      }
    } else {
      const auto& old = sums[static_cast<std::size_t>(x - 2 * r - 1) % ring_s];
      for (int q = 0; q < 4; ++q) {
        const Family& fm = fam[q / 2];
        auto& tq = total[static_cast<std::size_t>(q)];
        const auto& o = old[static_cast<std::size_t>(q)];
        const auto& nw = cur[static_cast<std::size_t>(q)];
        for (std::size_t idx = 0; idx < slice; ++idx)
          tq[idx] = addmod(mulmod(fm.base_inv[0], submod(tq[idx], o[idx])), mulmod(fm.base_top[0], nw[idx]));
      }
    }

    // Centres in slice x - r.
    const long x0 = x - r;
    const SliceLifts& cl = lift_ring[static_cast<std::size_t>(x0) % ring_l];
    std::vector<long> y(d > 1 ? d - 1 : 0, center_lo);
    while (true) {
      std::size_t idx = 0;
      for (long v : y) idx = idx * static_cast<std::size_t>(side) + static_cast<std::size_t>(v);
      for (std::uint32_t c = cl.start[idx]; c < cl.start[idx + 1]; ++c) {
        const long* m0 = cl.flat.data() + static_cast<std::size_t>(c) * codim;
        Key key{submod(total[0][idx], mulmod(fam[0].offset_weight(m0, codim), total[1][idx])),
                submod(total[2][idx], mulmod(fam[1].offset_weight(m0, codim), total[3][idx]))};
        ++rep.total;
        auto it = index.find(key);
        if (it == index.end()) {
          index.emplace(key, rep.classes.size());
          std::vector<long> n{x0 - big};
          for (long v : y) n.push_back(v - big);
          rep.classes.push_back({n, 1, 0});
        } else {
          ++rep.classes[it->second].count;
        }
      }
      std::size_t a = y.size();
      bool more = false;
      while (a-- > 0) {
        if (y[a] < center_hi) {
          ++y[a];
          for (std::size_t q = a + 1; q < y.size(); ++q) y[q] = center_lo;
          more = true;
          break;
        }
      }
      if (!more) break;
    }
  }
  for (auto& c : rep.classes) c.frequency = static_cast<double>(c.count) / static_cast<double>(rep.total);
  return rep;
}

}  // namespace lrcut
