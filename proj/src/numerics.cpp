#include "evalues/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <vector>

namespace evalues {

namespace {

// W. J. Cody, "Rational Chebyshev approximation for the error function",
// Math. Comp. 23 (1969), 631-638. Coefficients from the SPECFUN CALERF
// packet (IEEE double selections).
constexpr double kErfA[5] = {3.1611237438705656, 113.864154151050156,
                             377.485237685302021, 3209.37758913846947,
                             0.185777706184603153};
constexpr double kErfB[4] = {23.6012909523441209, 244.024637934444173,
                             1282.61652607737228, 2844.23683343917062};
constexpr double kErfC[9] = {0.564188496988670089, 8.88314979438837594,
                             66.1191906371416295,  298.635138197400131,
                             881.95222124176909,   1712.04761263407058,
                             2051.07837782607147,  1230.33935479799725,
                             2.15311535474403846e-8};
constexpr double kErfD[8] = {15.7449261107098347, 117.693950891312499,
                             537.181101862009858, 1621.38957456669019,
                             3290.79923573345963, 4362.61909014324716,
                             3439.36767414372164, 1230.33935480374942};
constexpr double kErfP[6] = {0.305326634961232344, 0.360344899949804439,
                             0.125781726111229246, 0.0160837851487422766,
                             6.58749161529837803e-4, 0.0163153871373020978};
constexpr double kErfQ[5] = {2.56852019228982242,   1.87295284992346047,
                             0.527905102951428412,  0.0605183413124413191,
                             0.00233520497626869185};

constexpr double kSqrtPiInv = 0.56418958354775628695;  // 1/sqrt(pi)

// erfc(x) for x >= 0, optionally scaled by exp(x*x).
double erfc_cody_positive(double y, bool scaled) {
  double result;
  if (y <= 0.46875) {
    double ysq = (y > 1.11e-16) ? y * y : 0.0;
    double xnum = kErfA[4] * ysq;
    double xden = ysq;
    for (int i = 0; i < 3; ++i) {
      xnum = (xnum + kErfA[i]) * ysq;
      xden = (xden + kErfB[i]) * ysq;
    }
    double erf = y * (xnum + kErfA[3]) / (xden + kErfB[3]);
    result = 1.0 - erf;
    if (scaled) result *= std::exp(ysq);
    return result;
  }
  if (y <= 4.0) {
    double xnum = kErfC[8] * y;
    double xden = y;
    for (int i = 0; i < 7; ++i) {
      xnum = (xnum + kErfC[i]) * y;
      xden = (xden + kErfD[i]) * y;
    }
    result = (xnum + kErfC[7]) / (xden + kErfD[7]);
  } else {
    if (!scaled && y >= 26.543) return 0.0;
    if (scaled && y >= 6.71e7) return kSqrtPiInv / y;
    double ysq = 1.0 / (y * y);
    double xnum = kErfP[5] * ysq;
    double xden = ysq;
    for (int i = 0; i < 4; ++i) {
      xnum = (xnum + kErfP[i]) * ysq;
      xden = (xden + kErfQ[i]) * ysq;
    }
    result = ysq * (xnum + kErfP[4]) / (xden + kErfQ[4]);
    result = (kSqrtPiInv - result) / y;
  }
  if (!scaled) {
    // exp(-y^2) split as in CALERF to preserve accuracy
    double ysq = std::floor(y * 16.0) / 16.0;
    double del = (y - ysq) * (y + ysq);
    result *= std::exp(-ysq * ysq) * std::exp(-del);
  }
  return result;
}

double erfc_cody(double x) {
  if (x < 0.0) return 2.0 - erfc_cody_positive(-x, false);
  return erfc_cody_positive(x, false);
}

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kLnSqrt2Pi = 0.91893853320467274178;

void check_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be finite");
}

}  // namespace

double std_normal_cdf(double x) {
  check_finite(x, "std_normal_cdf argument");
  return 0.5 * erfc_cody(-x / kSqrt2);
}

double log_std_normal_cdf(double x) {
  check_finite(x, "log_std_normal_cdf argument");
  if (x > -8.0) return std::log(std_normal_cdf(x));
  // log of the scaled complementary error function keeps full accuracy in
  // the deep left tail: Phi(x) = erfcx(-x/sqrt2) * exp(-x^2/2) / 2.
  double scaled = erfc_cody_positive(-x / kSqrt2, true);
  return std::log(0.5 * scaled) - 0.5 * x * x;
}

namespace {

// log survival of chi2 with 2k dof at x, i.e. log P(Poisson(x/2) <= k-1),
// via a normalized window around the dominant Poisson term.
double poisson_cdf_log(int k, double lam) {
  // direct summation is exact and cheap when nothing can overflow
  if (k <= 64 && lam <= 650.0) {
    double term = 1.0;
    double sum = 1.0;
    for (int j = 1; j < k; ++j) {
      term *= lam / j;
      sum += term;
    }
    return -lam + std::log(sum);
  }
  int jstar = std::min<long long>(k - 1, static_cast<long long>(lam));
  double lstar = jstar * std::log(lam) - std::lgamma(static_cast<double>(jstar) + 1.0);
  double sum = 1.0;
  double t = 1.0;
  for (int j = jstar; j > 0; --j) {
    t *= j / lam;
    sum += t;
    if (t < 1e-18) break;
  }
  t = 1.0;
  for (int j = jstar + 1; j < k; ++j) {
    t *= lam / j;
    sum += t;
    if (t < 1e-18) break;
  }
  return -lam + lstar + std::log(sum);
}

}  // namespace

double chi2_survival_even(int dof, double x) {
  return std::exp(chi2_log_survival_even(dof, x));
}

double chi2_log_survival_even(int dof, double x) {
  if (dof < 2 || dof % 2 != 0)
    throw std::invalid_argument("chi2_survival_even: dof must be even and >= 2");
  if (!(x >= 0.0)) throw std::invalid_argument("chi2_survival_even: x must be >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return -kInf;
  return poisson_cdf_log(dof / 2, x / 2.0);
}

double lower_incomplete_gamma(double a, double z) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw std::invalid_argument("lower_incomplete_gamma: a must be positive");
  if (!(z >= 0.0)) throw std::invalid_argument("lower_incomplete_gamma: z must be >= 0");
  if (z == 0.0) return 0.0;
  if (std::isinf(z)) return std::tgamma(a);

  double log_prefix = a * std::log(z) - z;
  if (z < a + 1.0) {
    // gamma(a,z) = z^a e^-z sum_n z^n / (a (a+1) ... (a+n))
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 10000; ++n) {
      term *= z / (a + n);
      sum += term;
      if (term < sum * 1e-17) break;
    }
    return std::exp(log_prefix) * sum;
  }
  // Upper tail by modified Lentz continued fraction, then complement.
  constexpr double tiny = 1e-300;
  double b = z + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  double upper = std::exp(log_prefix) * h;
  return std::tgamma(a) - upper;
}

namespace {

// QUADPACK dqk15 abscissae/weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double integral;
  double err;
};

// One 15-point Gauss-Kronrod panel. For a decreasing integrand the rectangle
// gap (b-a)(f(a)-f(b)) rigorously bounds the error of any convex estimate, so
// the reported error is the smaller of that and the Kronrod-Gauss difference.
Panel gk15(const std::function<double(double)>& f, double a, double b) {
  double c = 0.5 * (a + b);
  double h = 0.5 * (b - a);
  double fsum_k = 0.0;
  double fsum_g = 0.0;
  for (int i = 0; i < 8; ++i) {
    double f1 = f(c - h * kXgk[i]);
    double f2 = (i == 7) ? 0.0 : f(c + h * kXgk[i]);
    if (!(f1 >= 0.0) || !(f2 >= 0.0) || std::isinf(f1) || std::isinf(f2))
      throw QuadratureError("integrand returned a negative, NaN, or infinite value");
    double fs = (i == 7) ? f1 : f1 + f2;
    fsum_k += kWgk[i] * fs;
    if (i % 2 == 1) fsum_g += kWg[i / 2] * fs;
  }
  double resk = h * fsum_k;
  double resg = h * fsum_g;
  double fa = f(a);
  double fb = f(b);
  double gap = (std::isinf(fa)) ? kInf : std::max(0.0, (fa - fb)) * (b - a);
  double err = std::min(gap, std::fabs(resk - resg) * 10.0 + 1e-16 * std::fabs(resk));
  return {a, b, resk, err};
}

}  // namespace

QuadratureResult integrate_unit_interval(const std::function<double(double)>& f,
                                         double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol))
    throw std::invalid_argument("integrate_unit_interval: tol must be positive");

  constexpr int kMaxLevel = 980;  // floor near 2^-981 ~ 4.9e-296 > the 1e-300 domain clamp
  std::vector<Panel> panels;
  std::vector<double> level_integral;
  level_integral.reserve(kMaxLevel);

  double tail_estimate = 0.0;
  bool tail_certified = false;

  double b = 1.0;
  for (int level = 0; level < kMaxLevel; ++level) {
    double a = 0.5 * b;
    panels.push_back(gk15(f, a, b));
    level_integral.push_back(panels.back().integral);
    double fa = f(a);
    if (std::isinf(fa) || std::isnan(fa))
      throw QuadratureError("integrand is infinite at a positive point");

    // certified early stop: geometric level decay plus the monotone lower
    // bound a*f(a) <= int_0^a f both below tol/4
    int j = level;
    if (j >= 3 && a * fa <= 0.25 * tol) {
      double r = 0.0;
      bool ok = true;
      for (int i = j - 2; i <= j; ++i) {
        if (level_integral[i - 1] <= 0.0) { ok = false; break; }
        r = std::max(r, level_integral[i] / level_integral[i - 1]);
      }
      if (ok && r <= 0.9) {
        double est = level_integral[j] * r / (1.0 - r);
        if (est <= 0.25 * tol) {
          tail_estimate = est;
          tail_certified = true;
          break;
        }
      }
      if (level_integral[j] == 0.0 && fa == 0.0 && a < 1e-250) {
        // f vanishes on [a,1] and nothing has shown up for many levels
        tail_estimate = 0.0;
        tail_certified = true;
        break;
      }
    }
    b = a;
  }

  if (!tail_certified) {
    // at the floor: classify the level decay as geometric, polynomial in the
    // level index (log-type singularity), or too slow to be integrable
    int n = static_cast<int>(level_integral.size());
    int j = n - 1;
    while (j > 0 && level_integral[j] == 0.0) --j;
    if (level_integral[j] <= 0.0) {
      tail_estimate = 0.0;
    } else {
      double ij = level_integral[j];
      double prev = (j > 0) ? level_integral[j - 1] : 0.0;
      if (prev <= 0.0) throw QuadratureError("cannot classify the tail near 0");
      double ratio = ij / prev;
      if (ratio <= 0.9) {
        tail_estimate = ij * ratio / (1.0 - ratio);
      } else {
        // I_level ~ c * level^-s  =>  remaining tail ~ I_j * j / (s-1)
        double s = std::log(prev / ij) /
                   std::log(static_cast<double>(j + 1) / static_cast<double>(j));
        if (!(s > 1.05))
          throw QuadratureError(
              "integral appears divergent: level contributions near 0 are not decaying");
        tail_estimate = ij * (j + 1) / (s - 1.0);
      }
    }
  }

  // refine the worst panels until the resolved error target is met
  auto cmp = [](const Panel& x, const Panel& y) { return x.err < y.err; };
  std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> queue(cmp, panels);
  double total = 0.0;
  double total_err = 0.0;
  for (const Panel& p : panels) {
    total += p.integral;
    total_err += p.err;
  }
  size_t evals = panels.size();
  constexpr size_t kMaxPanels = 200000;
  while (total_err > 0.5 * tol && evals < kMaxPanels) {
    Panel worst = queue.top();
    queue.pop();
    double mid = 0.5 * (worst.a + worst.b);
    Panel left = gk15(f, worst.a, mid);
    Panel right = gk15(f, mid, worst.b);
    total += left.integral + right.integral - worst.integral;
    total_err += left.err + right.err - worst.err;
    queue.push(left);
    queue.push(right);
    evals += 2;
  }
  if (total_err > 0.5 * tol)
    throw QuadratureError("refinement budget exhausted before reaching the tolerance");

  return {total, total_err + tail_estimate};
}

}  // namespace evalues
