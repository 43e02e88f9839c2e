#include "fput/krylov.hpp"

#include <cmath>

namespace fput {

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
    return s;
}

double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

GmresResult gmres(const LinearMap& A, const Vec& b, double rtol, int restart, int max_restarts) {
    const size_t n = b.size();
    GmresResult out;
    out.x.assign(n, 0.0);
    double bnorm = norm2(b);
    if (bnorm == 0.0) {
        out.converged = true;
        return out;
    }

    Vec r = b;
    for (int cycle = 0; cycle < max_restarts; ++cycle) {
        if (cycle > 0) {
            Vec Ax = A(out.x);
            for (size_t i = 0; i < n; ++i) r[i] = b[i] - Ax[i];
        }
        double beta = norm2(r);
        out.rel_residual = beta / bnorm;
        if (out.rel_residual <= rtol) {
            out.converged = true;
            return out;
        }

        std::vector<Vec> V(restart + 1, Vec(n));
        std::vector<Vec> H(restart + 1, Vec(restart, 0.0));
        Vec cs(restart), sn(restart), s(restart + 1, 0.0);
        for (size_t i = 0; i < n; ++i) V[0][i] = r[i] / beta;
        s[0] = beta;

        int m = 0;
        for (; m < restart; ++m) {
            Vec w = A(V[m]);
            ++out.iterations;
            for (int i = 0; i <= m; ++i) {
                H[i][m] = dot(w, V[i]);
                for (size_t t = 0; t < n; ++t) w[t] -= H[i][m] * V[i][t];
            }
            H[m + 1][m] = norm2(w);
            if (H[m + 1][m] > 0.0)
                for (size_t t = 0; t < n; ++t) V[m + 1][t] = w[t] / H[m + 1][m];

            for (int i = 0; i < m; ++i) {
                double tmp = cs[i] * H[i][m] + sn[i] * H[i + 1][m];
                H[i + 1][m] = -sn[i] * H[i][m] + cs[i] * H[i + 1][m];
                H[i][m] = tmp;
            }
            double den = std::hypot(H[m][m], H[m + 1][m]);
            cs[m] = den > 0 ? H[m][m] / den : 1.0;
            sn[m] = den > 0 ? H[m + 1][m] / den : 0.0;
            H[m][m] = den;
            H[m + 1][m] = 0.0;
            s[m + 1] = -sn[m] * s[m];
            s[m] = cs[m] * s[m];

            if (std::abs(s[m + 1]) / bnorm <= rtol || den == 0.0) {
                ++m;
                break;
            }
        }

        Vec y(m, 0.0);
        for (int i = m - 1; i >= 0; --i) {
            double acc = s[i];
            for (int j = i + 1; j < m; ++j) acc -= H[i][j] * y[j];
            y[i] = H[i][i] != 0.0 ? acc / H[i][i] : 0.0;
        }
        for (int i = 0; i < m; ++i)
            for (size_t t = 0; t < n; ++t) out.x[t] += y[i] * V[i][t];
    }

    Vec Ax = A(out.x);
    for (size_t i = 0; i < n; ++i) r[i] = b[i] - Ax[i];
    out.rel_residual = norm2(r) / bnorm;
    out.converged = out.rel_residual <= rtol;
    return out;
}

}  // namespace fput
