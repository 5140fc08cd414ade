// AVX2 sweep kernel: eight division chains in flight, four per 256-bit
// register. Quotients come from vdivpd; for v < 2^49 the floor/round of the
// double quotient equals the integer result, because a non-integral ratio
// v/u is at least 1/(2u) away from the rounding boundary while the division
// error is below 2^-52 * (v/u). Remainders via FMA are exact integers.
// Outputs must match the scalar kernel exactly on every integer statistic.

#include "euclid/kernels.hpp"

#if defined(EUCLID_HAVE_AVX2)

#include <immintrin.h>

namespace euclid::detail {

namespace {

struct LaneState {
  alignas(32) double u[8];
  alignas(32) double v[8];
  alignas(32) double p[8];
  alignas(32) double c[8];
};

template <Algo A, bool HasTab>
void sweep_avx2_impl(const KernelJob& job, const uint32_t* us, const uint32_t* vs,
                     size_t count, SweepStats& st) {
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffll));
  const double* tab = job.cost_tab;

  LaneState ls;
  size_t feed = 0;
  unsigned live = 0;
  for (int i = 0; i < 8; ++i) {
    if (feed < count) {
      ls.u[i] = double(us[feed]);
      ls.v[i] = double(vs[feed]);
      live |= 1u << i;
      ++feed;
    } else {
      ls.u[i] = 1.0;
      ls.v[i] = 1.0;
    }
    ls.p[i] = 0.0;
    ls.c[i] = 0.0;
  }

  while (live) {
    unsigned done_bits = 0;
    for (int h = 0; h < 2; ++h) {
      __m256d u = _mm256_load_pd(ls.u + 4 * h);
      __m256d v = _mm256_load_pd(ls.v + 4 * h);
      __m256d q = _mm256_div_pd(v, u);
      __m256d m;
      if constexpr (A == Algo::Standard) {
        m = _mm256_floor_pd(q);
      } else if constexpr (A == Algo::Centered) {
        m = _mm256_floor_pd(_mm256_add_pd(q, half));
      } else {
        m = _mm256_fmadd_pd(_mm256_floor_pd(_mm256_mul_pd(q, half)), two, one);
      }
      __m256d s = _mm256_fnmadd_pd(m, u, v);  // v - m*u, exact
      __m256d neg = _mm256_cmp_pd(s, zero, _CMP_LT_OQ);
      __m256d r = _mm256_and_pd(s, abs_mask);
      if constexpr (HasTab) {
        __m256d idx_d = _mm256_fmadd_pd(m, two, _mm256_and_pd(neg, one));
        __m128i idx = _mm256_cvttpd_epi32(idx_d);
        __m256d add = _mm256_i32gather_pd(tab, idx, 8);
        __m256d c = _mm256_load_pd(ls.c + 4 * h);
        _mm256_store_pd(ls.c + 4 * h, _mm256_add_pd(c, add));
      }
      __m256d p = _mm256_load_pd(ls.p + 4 * h);
      _mm256_store_pd(ls.p + 4 * h, _mm256_add_pd(p, one));
      __m256d done = _mm256_cmp_pd(r, zero, _CMP_EQ_OQ);
      // next state: v' = u, u' = r (done lanes are patched below)
      _mm256_store_pd(ls.v + 4 * h, u);
      _mm256_store_pd(ls.u + 4 * h, r);
      done_bits |= unsigned(_mm256_movemask_pd(done)) << (4 * h);
    }
    if (!done_bits) continue;
    unsigned bits = done_bits;
    do {
      int lane = __builtin_ctz(bits);
      bits &= bits - 1;
      if (live & (1u << lane))
        record_pair(job, uint32_t(ls.p[lane]), ls.c[lane], st);
      if (feed < count) {
        ls.u[lane] = double(us[feed]);
        ls.v[lane] = double(vs[feed]);
        ++feed;
      } else {
        live &= ~(1u << lane);
        ls.u[lane] = 1.0;
        ls.v[lane] = 1.0;
      }
      ls.p[lane] = 0.0;
      ls.c[lane] = 0.0;
    } while (bits);
  }
}

}  // namespace

void sweep_chunk_avx2(const KernelJob& job, const uint32_t* us, const uint32_t* vs,
                      size_t count, SweepStats& st) {
  bool tab = job.cost_tab != nullptr;
  switch (job.algo) {
    case Algo::Standard:
      tab ? sweep_avx2_impl<Algo::Standard, true>(job, us, vs, count, st)
          : sweep_avx2_impl<Algo::Standard, false>(job, us, vs, count, st);
      break;
    case Algo::Centered:
      tab ? sweep_avx2_impl<Algo::Centered, true>(job, us, vs, count, st)
          : sweep_avx2_impl<Algo::Centered, false>(job, us, vs, count, st);
      break;
    case Algo::Odd:
      tab ? sweep_avx2_impl<Algo::Odd, true>(job, us, vs, count, st)
          : sweep_avx2_impl<Algo::Odd, false>(job, us, vs, count, st);
      break;
  }
}

}  // namespace euclid::detail

#endif  // EUCLID_HAVE_AVX2
