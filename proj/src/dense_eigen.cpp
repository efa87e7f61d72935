#include "ncn/dense_eigen.hpp"

#include <cmath>
#include <limits>

namespace ncn {

namespace {

double sign_of(double magnitude, double sign_source)
{
    return sign_source >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude);
}

}  // namespace

double DenseMatrix::inf_norm() const
{
    double best = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n_; ++j) {
            row += std::abs((*this)(i, j));
        }
        best = std::max(best, row);
    }
    return best;
}

void balance(DenseMatrix& a)
{
    constexpr double radix = 2.0;
    constexpr double radix_sq = radix * radix;
    const std::size_t n = a.order();
    bool done = false;
    while (!done) {
        done = true;
        for (std::size_t i = 0; i < n; ++i) {
            double r = 0.0;
            double c = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) {
                    c += std::abs(a(j, i));
                    r += std::abs(a(i, j));
                }
            }
            if (c == 0.0 || r == 0.0) {
                continue;
            }
            double g = r / radix;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= radix_sq;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= radix_sq;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                g = 1.0 / f;
                for (std::size_t j = 0; j < n; ++j) {
                    a(i, j) *= g;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    a(j, i) *= f;
                }
            }
        }
    }
}

void reduce_to_hessenberg(DenseMatrix& a)
{
    const std::size_t n = a.order();
    if (n < 3) {
        return;
    }
    std::vector<double> v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double scale = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            scale += std::abs(a(i, k));
        }
        if (scale == 0.0) {
            continue;
        }
        double sigma = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] = a(i, k) / scale;
            sigma += v[i] * v[i];
        }
        const double alpha = sign_of(std::sqrt(sigma), v[k + 1]);
        v[k + 1] += alpha;
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            vnorm2 += v[i] * v[i];
        }
        if (vnorm2 == 0.0) {
            continue;
        }
        const double beta = 2.0 / vnorm2;

        // A <- (I - beta v v^T) A
        for (std::size_t j = k; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) {
                dot += v[i] * a(i, j);
            }
            dot *= beta;
            for (std::size_t i = k + 1; i < n; ++i) {
                a(i, j) -= dot * v[i];
            }
        }
        // A <- A (I - beta v v^T)
        for (std::size_t i = 0; i < n; ++i) {
            double dot = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) {
                dot += a(i, j) * v[j];
            }
            dot *= beta;
            for (std::size_t j = k + 1; j < n; ++j) {
                a(i, j) -= dot * v[j];
            }
        }
        for (std::size_t i = k + 2; i < n; ++i) {
            a(i, k) = 0.0;
        }
    }
}

std::vector<std::complex<double>> hessenberg_eigenvalues(DenseMatrix& a, const QrOptions& opts)
{
    const int n = static_cast<int>(a.order());
    std::vector<std::complex<double>> out(a.order());
    if (n == 0) {
        return out;
    }
    const double eps = std::numeric_limits<double>::epsilon();

    double anorm = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = std::max(i - 1, 0); j < n; ++j) {
            anorm += std::abs(a(i, j));
        }
    }

    int nn = n - 1;
    int its = 0;
    double t = 0.0;  // accumulated exceptional shifts
    double p = 0.0, q = 0.0, r = 0.0, s = 0.0, w = 0.0, x = 0.0, y = 0.0, z = 0.0;
    while (nn >= 0) {
        int l = nn;
        for (; l >= 1; --l) {
            s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
            if (s == 0.0) {
                s = anorm;
            }
            if (std::abs(a(l, l - 1)) <= opts.deflation_tol * s) {
                a(l, l - 1) = 0.0;
                break;
            }
        }
        x = a(nn, nn);
        if (l == nn) {
            out[nn] = {x + t, 0.0};
            --nn;
            its = 0;
            continue;
        }
        y = a(nn - 1, nn - 1);
        w = a(nn, nn - 1) * a(nn - 1, nn);
        if (l == nn - 1) {
            p = 0.5 * (y - x);
            q = p * p + w;
            z = std::sqrt(std::abs(q));
            x += t;
            if (q >= 0.0) {
                z = p + sign_of(z, p);
                const double first = x + z;
                const double second = z != 0.0 ? x - w / z : first;
                out[nn - 1] = {first, 0.0};
                out[nn] = {second, 0.0};
            } else {
                out[nn - 1] = {x + p, z};
                out[nn] = {x + p, -z};
            }
            nn -= 2;
            its = 0;
            continue;
        }

        if (its >= opts.max_iterations_per_eigenvalue) {
            throw ConvergenceError("QR iteration did not converge for block [" + std::to_string(l) +
                                       ", " + std::to_string(nn) + "] after " +
                                       std::to_string(its) + " iterations",
                                   static_cast<std::size_t>(l), static_cast<std::size_t>(nn));
        }
        if (its == 10 || its == 20 || its == 30) {
            // Exceptional shift.
            t += x;
            for (int i = 0; i <= nn; ++i) {
                a(i, i) -= x;
            }
            s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
            x = 0.75 * s;
            y = x;
            w = -0.4375 * s * s;
        }
        ++its;

        // Look for two consecutive small subdiagonal elements.
        int m = nn - 2;
        for (; m >= l; --m) {
            z = a(m, m);
            r = x - z;
            s = y - z;
            p = (r * s - w) / a(m + 1, m) + a(m, m + 1);
            q = a(m + 1, m + 1) - z - r - s;
            r = a(m + 2, m + 1);
            s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) {
                break;
            }
            const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
            const double v = std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
            if (u <= eps * v) {
                break;
            }
        }
        for (int i = m + 2; i <= nn; ++i) {
            a(i, i - 2) = 0.0;
            if (i != m + 2) {
                a(i, i - 3) = 0.0;
            }
        }

        // Double QR step on rows l..nn and columns m..nn.
        for (int k = m; k <= nn - 1; ++k) {
            if (k != m) {
                p = a(k, k - 1);
                q = a(k + 1, k - 1);
                r = 0.0;
                if (k != nn - 1) {
                    r = a(k + 2, k - 1);
                }
                x = std::abs(p) + std::abs(q) + std::abs(r);
                if (x != 0.0) {
                    p /= x;
                    q /= x;
                    r /= x;
                }
            }
            s = sign_of(std::sqrt(p * p + q * q + r * r), p);
            if (s == 0.0) {
                continue;
            }
            if (k == m) {
                if (l != m) {
                    a(k, k - 1) = -a(k, k - 1);
                }
            } else {
                a(k, k - 1) = -s * x;
            }
            p += s;
            x = p / s;
            y = q / s;
            z = r / s;
            q /= p;
            r /= p;
            for (int j = k; j <= nn; ++j) {
                p = a(k, j) + q * a(k + 1, j);
                if (k != nn - 1) {
                    p += r * a(k + 2, j);
                    a(k + 2, j) -= p * z;
                }
                a(k + 1, j) -= p * y;
                a(k, j) -= p * x;
            }
            const int mmin = nn < k + 3 ? nn : k + 3;
            for (int i = l; i <= mmin; ++i) {
                p = x * a(i, k) + y * a(i, k + 1);
                if (k != nn - 1) {
                    p += z * a(i, k + 2);
                    a(i, k + 2) -= p * r;
                }
                a(i, k + 1) -= p * q;
                a(i, k) -= p;
            }
        }
    }
    return out;
}

std::vector<std::complex<double>> eigenvalues(DenseMatrix a, const QrOptions& opts)
{
    balance(a);
    reduce_to_hessenberg(a);
    return hessenberg_eigenvalues(a, opts);
}

}  // namespace ncn
