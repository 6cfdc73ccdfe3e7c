#pragma once
// Bulk tables of Hurwitz class numbers up to a limit, either exact (int32
// twelfths) or reduced modulo a small prime ell (one byte per entry).
//
// Only N = 0, 3 (mod 4) are stored; slot(N) = N >> 1 maps those N to a
// contiguous index range.  The builder enumerates reduced forms (A,B,C) once
// for the whole range, segment by segment, instead of evaluating each N
// independently: for fixed (A,B) the discriminants 4AC - B^2 form an
// arithmetic progression with step 4A, so each segment fill is a set of
// strided accumulations into a small in-cache buffer.
//
// File format ("HWCT"):
//   bytes 0..3   magic "HWCT"
//   byte  4      version (1)
//   byte  5      mode (0 = exact, 1 = residue)
//   bytes 6..13  limit, little endian u64
//   bytes 14..21 ell,   little endian u64 (0 in exact mode)
//   payload      slot-ordered entries (exact: int32 LE twelfths;
//                residue: 1 byte, the residue of H(N) mod ell)
//   trailer      1 byte checksum tag (1 = SHA-256) + 32 byte digest of
//                everything before the tag

#include <openssl/evp.h>

#include <atomic>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "hwct/arith.hpp"

namespace hwct {

struct HwctIoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class TableMode : std::uint8_t { Exact = 0, Residue = 1 };

namespace detail {

constexpr std::size_t kSegmentSlots = 1u << 19;  // 2 MiB uint32 scratch per worker

// Largest stored index for a given limit: the greatest N <= limit with
// N = 0 or 3 (mod 4).
inline u64 max_stored(u64 limit) {
  switch (limit % 4) {
    case 1: return limit - 1;
    case 2: return limit - 2;
    default: return limit;
  }
}

// Accumulate 12*H(N) for every N with slot in [s0, s1) into buf (zeroed by
// caller), buf[i] corresponding to slot s0 + i.  Requires s0 even.
inline void fill_segment(u64 s0, u64 s1, std::uint32_t* buf) {
  const u64 n_lo = 2 * s0;
  const u64 n_hi = 2 * s1;
  const u64 slots = s1 - s0;
  const u64 a_max = isqrt((n_hi - 1) / 3);
  for (u64 A = 1; A <= a_max; ++A) {
    const u64 four_a = 4 * A;
    const u64 stride = 2 * A;
    u64 q = n_lo / four_a;
    u64 r = n_lo % four_a;
    for (u64 B = 0; B <= A; ++B) {
      if (B > 0) {
        // numerator n_lo + B^2 grows by 2B - 1 < 4A: at most one carry.
        r += 2 * B - 1;
        if (r >= four_a) {
          r -= four_a;
          ++q;
        }
      }
      u64 C = q + (r != 0 ? 1 : 0);
      if (C < A) C = A;
      const u64 N = four_a * C - B * B;
      if (N >= n_hi) continue;
      u64 idx = (N >> 1) - s0;
      const std::uint32_t w_run = (B == 0 || B == A) ? 12 : 24;
      if (C == A) {
        buf[idx] += (B == 0) ? 6 : (B == A ? 4 : 12);
        idx += stride;
      }
      for (; idx < slots; idx += stride) buf[idx] += w_run;
    }
  }
}

inline void sha256(const void* data, std::size_t len, unsigned char out[32]) {
  unsigned int n = 32;
  if (EVP_Digest(data, len, out, &n, EVP_sha256(), nullptr) != 1)
    throw HwctIoError("SHA-256 computation failed");
}

}  // namespace detail

class HurwitzTable {
 public:
  static HurwitzTable build(u64 limit, TableMode mode, u64 ell = 0, int workers = 1) {
    if (mode == TableMode::Residue) {
      if (ell < 5 || ell >= 256) throw std::invalid_argument("residue table needs 5 <= ell < 256");
      if (ell % 2 == 0 || ell % 3 == 0)
        throw std::invalid_argument("residue table needs ell coprime to 12");
    }
    HurwitzTable t;
    t.mode_ = mode;
    t.limit_ = limit;
    t.ell_ = mode == TableMode::Residue ? ell : 0;
    const u64 slots = (detail::max_stored(limit) >> 1) + 1;
    if (mode == TableMode::Exact)
      t.exact_.assign(slots, 0);
    else
      t.residue_.assign(slots, 0);

    const u64 n_segments = (slots + detail::kSegmentSlots - 1) / detail::kSegmentSlots;
    std::atomic<u64> next_segment{0};
    const u64 inv12 = mode == TableMode::Residue ? inv_mod(12 % ell, ell) : 0;
    auto work = [&] {
      std::vector<std::uint32_t> buf(detail::kSegmentSlots);
      while (true) {
        const u64 seg = next_segment.fetch_add(1);
        if (seg >= n_segments) break;
        const u64 s0 = seg * detail::kSegmentSlots;
        const u64 s1 = std::min<u64>(s0 + detail::kSegmentSlots, slots);
        std::fill(buf.begin(), buf.begin() + (s1 - s0), 0u);
        detail::fill_segment(s0, s1, buf.data());
        if (mode == TableMode::Exact) {
          for (u64 i = 0; i < s1 - s0; ++i)
            t.exact_[s0 + i] = static_cast<std::int32_t>(buf[i]);
        } else {
          for (u64 i = 0; i < s1 - s0; ++i)
            t.residue_[s0 + i] = static_cast<std::uint8_t>(buf[i] % ell * inv12 % ell);
        }
      }
    };
    if (workers <= 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (int i = 0; i < workers; ++i) pool.emplace_back(work);
      for (auto& th : pool) th.join();
    }
    // H(0) = -1/12.
    if (mode == TableMode::Exact)
      t.exact_[0] = -1;
    else
      t.residue_[0] = static_cast<std::uint8_t>((ell - 1) * inv12 % ell);
    return t;
  }

  TableMode mode() const { return mode_; }
  u64 limit() const { return limit_; }
  u64 ell() const { return ell_; }
  u64 max_index() const { return detail::max_stored(limit_); }
  u64 slot_count() const {
    return mode_ == TableMode::Exact ? exact_.size() : residue_.size();
  }

  bool has(u64 N) const { return N <= max_index() && (N % 4 == 0 || N % 4 == 3); }

  // 12*H(N); exact tables only.
  i64 twelfths(u64 N) const {
    require(N);
    if (mode_ != TableMode::Exact) throw std::logic_error("twelfths: residue table");
    return exact_[N >> 1];
  }

  // Residue of H(N) modulo ell (the table's own modulus in residue mode).
  u64 residue(u64 N, u64 ell) const {
    require(N);
    if (mode_ == TableMode::Residue) {
      if (ell != ell_) throw std::logic_error("residue: table built for a different modulus");
      return residue_[N >> 1];
    }
    i64 t = exact_[N >> 1] % static_cast<i64>(ell);
    if (t < 0) t += static_cast<i64>(ell);
    return mulmod(static_cast<u64>(t), inv_mod(12 % ell, ell), ell);
  }
  u64 residue(u64 N) const {
    if (mode_ != TableMode::Residue) throw std::logic_error("residue: exact table, pass a modulus");
    return residue(N, ell_);
  }

  void save(const std::string& path) const {
    std::vector<unsigned char> head;
    auto put_u64 = [&](u64 v) {
      for (int i = 0; i < 8; ++i) head.push_back(static_cast<unsigned char>(v >> (8 * i)));
    };
    head.insert(head.end(), {'H', 'W', 'C', 'T'});
    head.push_back(1);
    head.push_back(static_cast<unsigned char>(mode_));
    put_u64(limit_);
    put_u64(ell_);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw HwctIoError("cannot open for writing: " + path);
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    auto emit = [&](const void* p, std::size_t n) {
      out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
      EVP_DigestUpdate(ctx, p, n);
    };
    emit(head.data(), head.size());
    if (mode_ == TableMode::Exact)
      emit(exact_.data(), exact_.size() * sizeof(std::int32_t));
    else
      emit(residue_.data(), residue_.size());
    unsigned char tag = 1, digest[32];
    unsigned int dn = 32;
    EVP_DigestFinal_ex(ctx, digest, &dn);
    EVP_MD_CTX_free(ctx);
    out.write(reinterpret_cast<const char*>(&tag), 1);
    out.write(reinterpret_cast<const char*>(digest), 32);
    if (!out) throw HwctIoError("write failed: " + path);
  }

  static HurwitzTable load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw HwctIoError("cannot open: " + path);
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    if (bytes.size() < 22 + 33) throw HwctIoError("truncated table file: " + path);
    if (std::memcmp(bytes.data(), "HWCT", 4) != 0) throw HwctIoError("bad magic: " + path);
    if (bytes[4] != 1) throw HwctIoError("unsupported version: " + path);
    auto get_u64 = [&](std::size_t off) {
      u64 v = 0;
      for (int i = 0; i < 8; ++i) v |= static_cast<u64>(bytes[off + i]) << (8 * i);
      return v;
    };
    HurwitzTable t;
    t.mode_ = static_cast<TableMode>(bytes[5]);
    if (t.mode_ != TableMode::Exact && t.mode_ != TableMode::Residue)
      throw HwctIoError("bad mode byte: " + path);
    t.limit_ = get_u64(6);
    t.ell_ = get_u64(14);
    const u64 slots = (detail::max_stored(t.limit_) >> 1) + 1;
    const std::size_t entry = t.mode_ == TableMode::Exact ? 4 : 1;
    const std::size_t expect = 22 + slots * entry + 33;
    if (bytes.size() != expect) throw HwctIoError("size mismatch: " + path);
    if (bytes[expect - 33] != 1) throw HwctIoError("unknown checksum tag: " + path);
    unsigned char digest[32];
    detail::sha256(bytes.data(), expect - 33, digest);
    if (std::memcmp(digest, bytes.data() + expect - 32, 32) != 0)
      throw HwctIoError("checksum mismatch: " + path);
    if (t.mode_ == TableMode::Exact) {
      t.exact_.resize(slots);
      std::memcpy(t.exact_.data(), bytes.data() + 22, slots * 4);
    } else {
      t.residue_.assign(bytes.begin() + 22, bytes.begin() + 22 + static_cast<std::ptrdiff_t>(slots));
    }
    return t;
  }

  std::string checksum_hex() const {
    std::vector<unsigned char> head;
    auto put_u64 = [&](u64 v) {
      for (int i = 0; i < 8; ++i) head.push_back(static_cast<unsigned char>(v >> (8 * i)));
    };
    head.insert(head.end(), {'H', 'W', 'C', 'T'});
    head.push_back(1);
    head.push_back(static_cast<unsigned char>(mode_));
    put_u64(limit_);
    put_u64(ell_);
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    EVP_DigestUpdate(ctx, head.data(), head.size());
    if (mode_ == TableMode::Exact)
      EVP_DigestUpdate(ctx, exact_.data(), exact_.size() * sizeof(std::int32_t));
    else
      EVP_DigestUpdate(ctx, residue_.data(), residue_.size());
    unsigned char digest[32];
    unsigned int dn = 32;
    EVP_DigestFinal_ex(ctx, digest, &dn);
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string s;
    for (unsigned char b : digest) {
      s += hex[b >> 4];
      s += hex[b & 15];
    }
    return s;
  }

 private:
  void require(u64 N) const {
    if (!has(N)) throw std::out_of_range("table: index " + std::to_string(N) + " not stored");
  }

  TableMode mode_ = TableMode::Exact;
  u64 limit_ = 0;
  u64 ell_ = 0;
  std::vector<std::int32_t> exact_;
  std::vector<std::uint8_t> residue_;
};

}  // namespace hwct
