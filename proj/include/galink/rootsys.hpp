#pragma once

#include <galink/numeric.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace galink {

/// Dynkin labels in the fundamental-weight basis; entries may be negative.
using FiniteWeight = std::vector<long>;

/// A finite Weyl group element acting on label vectors, with its determinant.
struct WeylElement {
    std::vector<std::vector<long>> mat;  // row-major, w(x)_i = sum_j mat[i][j] x_j
    int det;
};

struct AlcoveResult {
    FiniteWeight weight;  // reduced shifted labels (meaningful when sign != 0)
    int sign;             // +1/-1 parity of the folding, 0 on a wall
};

/// Cartan data of a finite simple Lie algebra X_r, with the invariant bilinear
/// form normalized so long roots have squared length 2. Weights live in the
/// fundamental-weight basis throughout; simple roots are rows of the Cartan
/// matrix in that basis.
class SimpleAlgebra {
public:
    /// Default-constructed objects are empty placeholders; obtain usable
    /// instances through build() or parse().
    SimpleAlgebra() = default;

    static SimpleAlgebra build(char family, int rank) {
        SimpleAlgebra a;
        a.family_ = family;
        a.rank_ = rank;
        a.cartan_ = cartan_matrix(family, rank);
        a.init();
        return a;
    }

    /// Parse labels like "A1", "G2", "D4".
    static SimpleAlgebra parse(const std::string& name) {
        if (name.size() < 2) throw UsageError("algebra label too short: " + name);
        char fam = static_cast<char>(std::toupper(name[0]));
        int rank = 0;
        try {
            rank = std::stoi(name.substr(1));
        } catch (...) {
            throw UsageError("cannot parse rank in algebra label: " + name);
        }
        return build(fam, rank);
    }

    char family() const { return family_; }
    int rank() const { return rank_; }
    std::string name() const { return std::string(1, family_) + std::to_string(rank_); }

    const std::vector<std::vector<long>>& cartan() const { return cartan_; }
    const std::vector<std::vector<Rational>>& quadratic_form() const { return quad_; }
    const std::vector<FiniteWeight>& positive_roots() const { return pos_roots_; }
    const FiniteWeight& rho() const { return rho_; }
    const FiniteWeight& highest_root() const { return theta_; }
    const std::vector<long>& comarks() const { return comarks_; }
    long dual_coxeter() const { return h_dual_; }
    long n_positive_roots() const { return static_cast<long>(pos_roots_.size()); }
    long dim() const { return rank_ + 2 * n_positive_roots(); }
    long center_index() const { return center_index_; }          // |P / Q^vee|
    long form_denominator() const { return form_denominator_; }  // lcm of form denominators

    Rational inner(const FiniteWeight& x, const FiniteWeight& y) const {
        check_weight(x);
        check_weight(y);
        Rational acc = 0;
        for (int i = 0; i < rank_; ++i) {
            if (x[i] == 0) continue;
            Rational row = 0;
            for (int j = 0; j < rank_; ++j)
                if (y[j] != 0) row += quad_[i][j] * y[j];
            acc += Rational(x[i]) * row;
        }
        return acc;
    }

    /// s_i(x) = x - x_i * alpha_i.
    FiniteWeight reflect(int i, FiniteWeight x) const {
        long c = x[i];
        if (c != 0)
            for (int j = 0; j < rank_; ++j) x[j] -= c * cartan_[i][j];
        return x;
    }

    /// Pairing with the highest coroot: sum_i comark_i * x_i.
    long theta_pairing(const FiniteWeight& x) const {
        long s = 0;
        for (int i = 0; i < rank_; ++i) s += comarks_[i] * x[i];
        return s;
    }

    bool is_dominant(const FiniteWeight& x) const {
        return std::all_of(x.begin(), x.end(), [](long v) { return v >= 0; });
    }

    std::vector<FiniteWeight> weyl_orbit(const FiniteWeight& x) const {
        check_weight(x);
        std::set<FiniteWeight> seen{x};
        std::deque<FiniteWeight> queue{x};
        while (!queue.empty()) {
            FiniteWeight w = std::move(queue.front());
            queue.pop_front();
            for (int i = 0; i < rank_; ++i) {
                FiniteWeight y = reflect(i, w);
                if (seen.insert(y).second) queue.push_back(y);
            }
        }
        return {seen.begin(), seen.end()};
    }

    long weyl_orbit_size(const FiniteWeight& x) const {
        return static_cast<long>(weyl_orbit(x).size());
    }

    /// |W|, as the orbit size of the regular weight rho.
    long weyl_order() const { return weyl_orbit_size(rho_); }

    /// Full enumeration of W as matrices; throws if |W| would exceed cap.
    std::vector<WeylElement> weyl_elements(long cap) const {
        std::vector<std::vector<std::vector<long>>> gens(rank_);
        for (int i = 0; i < rank_; ++i) {
            auto& m = gens[i];
            m.assign(rank_, std::vector<long>(rank_));
            for (int r = 0; r < rank_; ++r)
                for (int c = 0; c < rank_; ++c) m[r][c] = (r == c ? 1 : 0) - (c == i ? cartan_[i][r] : 0);
        }
        // identity acting on column vectors of labels: w(x)_r = sum_c m[r][c] x_c.
        WeylElement id;
        id.mat.assign(rank_, std::vector<long>(rank_));
        for (int r = 0; r < rank_; ++r) id.mat[r][r] = 1;
        id.det = 1;
        std::map<std::vector<std::vector<long>>, int> seen{{id.mat, 1}};
        std::deque<WeylElement> queue{id};
        std::vector<WeylElement> out{id};
        while (!queue.empty()) {
            WeylElement w = std::move(queue.front());
            queue.pop_front();
            for (int i = 0; i < rank_; ++i) {
                WeylElement y;
                y.mat.assign(rank_, std::vector<long>(rank_));
                for (int r = 0; r < rank_; ++r)
                    for (int c = 0; c < rank_; ++c) {
                        long acc = 0;
                        for (int t = 0; t < rank_; ++t) acc += gens[i][r][t] * w.mat[t][c];
                        y.mat[r][c] = acc;
                    }
                y.det = -w.det;
                if (seen.emplace(y.mat, 1).second) {
                    if (static_cast<long>(out.size()) >= cap)
                        throw UsageError("Weyl group larger than the configured bound of " +
                                         std::to_string(cap));
                    out.push_back(y);
                    queue.push_back(y);
                }
            }
        }
        return out;
    }

    static FiniteWeight apply(const WeylElement& w, const FiniteWeight& x) {
        FiniteWeight y(x.size());
        for (size_t r = 0; r < x.size(); ++r) {
            long acc = 0;
            for (size_t c = 0; c < x.size(); ++c) acc += w.mat[r][c] * x[c];
            y[r] = acc;
        }
        return y;
    }

    /// Fold x into the dominant chamber with the parity of the folding;
    /// sign 0 when the orbit lies on a reflection wall.
    std::pair<FiniteWeight, int> dominant_reduce(FiniteWeight x) const {
        check_weight(x);
        int sign = 1;
        for (;;) {
            int neg = -1;
            for (int i = 0; i < rank_; ++i)
                if (x[i] < 0) { neg = i; break; }
            if (neg < 0) break;
            x = reflect(neg, std::move(x));
            sign = -sign;
        }
        for (int i = 0; i < rank_; ++i)
            if (x[i] == 0) return {x, 0};
        return {x, sign};
    }

    FiniteWeight dominant_representative(FiniteWeight x) const {
        check_weight(x);
        for (;;) {
            int neg = -1;
            for (int i = 0; i < rank_; ++i)
                if (x[i] < 0) { neg = i; break; }
            if (neg < 0) return x;
            x = reflect(neg, std::move(x));
        }
    }

    /// Fold a shifted weight into the interior of the level-m fundamental
    /// alcove under the affine Weyl group, tracking the reflection parity.
    /// The zeroth label is m - (x, theta^vee); interior means all r+1 shifted
    /// labels strictly positive. Requires m >= dual Coxeter number.
    AlcoveResult alcove_reduce(long m, FiniteWeight x) const {
        check_weight(x);
        if (m < h_dual_)
            throw UsageError("shifted level below the dual Coxeter number");
        int sign = 1;
        for (;;) {
            int neg = -1;
            for (int i = 0; i < rank_; ++i)
                if (x[i] < 0) { neg = i; break; }
            if (neg >= 0) {
                long c = x[neg];
                for (int j = 0; j < rank_; ++j) x[j] -= c * cartan_[neg][j];
                sign = -sign;
                continue;
            }
            long lvl = theta_pairing(x);
            if (lvl > m) {
                // affine reflection s_0: x -> x - (lvl - m) * theta
                long c = lvl - m;
                for (int j = 0; j < rank_; ++j) x[j] -= c * theta_[j];
                sign = -sign;
                continue;
            }
            if (lvl == m) return {x, 0};
            for (int i = 0; i < rank_; ++i)
                if (x[i] == 0) return {x, 0};
            return {x, sign};
        }
    }

    /// All dominant weights mu <= lambda (difference a non-negative integer
    /// combination of simple roots), lambda included.
    std::vector<FiniteWeight> dominant_below(const FiniteWeight& lambda) const {
        check_weight(lambda);
        if (!is_dominant(lambda)) throw UsageError("dominant_below requires a dominant weight");
        std::vector<long> cmax(rank_);
        for (int i = 0; i < rank_; ++i) {
            Rational b = 0;
            for (int j = 0; j < rank_; ++j) b += Rational(lambda[j]) * cartan_inv_[j][i];
            cmax[i] = to_long(rational_floor(b));
        }
        std::vector<FiniteWeight> out;
        std::vector<long> c(rank_, 0);
        for (;;) {
            FiniteWeight mu = lambda;
            for (int i = 0; i < rank_; ++i)
                if (c[i] != 0)
                    for (int j = 0; j < rank_; ++j) mu[j] -= c[i] * cartan_[i][j];
            if (is_dominant(mu)) out.push_back(mu);
            int pos = rank_ - 1;
            while (pos >= 0 && c[pos] == cmax[pos]) c[pos--] = 0;
            if (pos < 0) break;
            ++c[pos];
        }
        return out;
    }

    /// mu <= lambda in the dominance order (lambda - mu in the positive root cone).
    bool dominates(const FiniteWeight& lambda, const FiniteWeight& mu) const {
        for (int i = 0; i < rank_; ++i) {
            Rational c = 0;
            for (int j = 0; j < rank_; ++j) c += Rational(lambda[j] - mu[j]) * cartan_inv_[j][i];
            if (c < 0 || !is_integer(c)) return false;
        }
        return true;
    }

    /// Height of lambda - mu as a sum of simple roots (assumes mu <= lambda).
    Rational relative_height(const FiniteWeight& lambda, const FiniteWeight& mu) const {
        Rational h = 0;
        for (int i = 0; i < rank_; ++i)
            for (int j = 0; j < rank_; ++j) h += Rational(lambda[j] - mu[j]) * cartan_inv_[j][i];
        return h;
    }

    /// Weight multiplicities of the dominant weights of L(lambda), by the
    /// Freudenthal recursion over the dominant cone.
    std::map<FiniteWeight, long> dominant_multiplicities(const FiniteWeight& lambda) const {
        if (!is_dominant(lambda)) throw UsageError("highest weight must be dominant");
        std::vector<FiniteWeight> doms = dominant_below(lambda);
        std::sort(doms.begin(), doms.end(), [&](const FiniteWeight& a, const FiniteWeight& b) {
            Rational ha = relative_height(lambda, a), hb = relative_height(lambda, b);
            if (ha != hb) return ha < hb;
            return a < b;
        });
        FiniteWeight lam_rho = lambda;
        for (int i = 0; i < rank_; ++i) lam_rho[i] += 1;
        Rational n_lam = inner(lam_rho, lam_rho);
        Rational norm_lam = inner(lambda, lambda);
        std::map<FiniteWeight, long> mult;
        for (const FiniteWeight& mu : doms) {
            if (mu == lambda) {
                mult[mu] = 1;
                continue;
            }
            Rational numer = 0;
            Rational mm = inner(mu, mu);
            for (const FiniteWeight& alpha : pos_roots_) {
                Rational aa = inner(alpha, alpha);
                Rational ma = inner(mu, alpha);
                for (long j = 1;; ++j) {
                    Rational norm = mm + 2 * j * ma + j * j * aa;
                    if (norm > norm_lam) {
                        if (Rational(j) * aa > -ma) break;  // past the vertex, norms only grow
                        continue;
                    }
                    FiniteWeight nu(rank_);
                    for (int t = 0; t < rank_; ++t) nu[t] = mu[t] + j * alpha[t];
                    auto it = mult.find(dominant_representative(std::move(nu)));
                    if (it != mult.end()) numer += 2 * it->second * (ma + j * aa);
                }
            }
            FiniteWeight mu_rho = mu;
            for (int i = 0; i < rank_; ++i) mu_rho[i] += 1;
            Rational denom = n_lam - inner(mu_rho, mu_rho);
            Rational m = numer / denom;
            if (!is_integer(m) || m <= 0)
                throw InternalError("Freudenthal recursion produced a non-positive-integer multiplicity");
            mult[mu] = to_long(numerator(m));
        }
        return mult;
    }

    /// dim L(lambda) by the Weyl dimension formula.
    Int weyl_dimension(const FiniteWeight& lambda) const {
        if (!is_dominant(lambda)) throw UsageError("highest weight must be dominant");
        FiniteWeight lam_rho = lambda;
        for (int i = 0; i < rank_; ++i) lam_rho[i] += 1;
        Rational prod = 1;
        for (const FiniteWeight& alpha : pos_roots_)
            prod *= inner(lam_rho, alpha) / inner(rho_, alpha);
        if (!is_integer(prod)) throw InternalError("Weyl dimension formula gave a non-integer");
        return numerator(prod);
    }

private:
    void check_weight(const FiniteWeight& x) const {
        if (static_cast<int>(x.size()) != rank_)
            throw UsageError("weight has wrong number of labels for " + name());
    }

    static std::vector<std::vector<long>> cartan_matrix(char family, int rank) {
        auto chain = [&](int r) {
            std::vector<std::vector<long>> a(r, std::vector<long>(r));
            for (int i = 0; i < r; ++i) a[i][i] = 2;
            for (int i = 0; i + 1 < r; ++i) a[i][i + 1] = a[i + 1][i] = -1;
            return a;
        };
        switch (family) {
            case 'A':
                if (rank < 1) throw UsageError("A_r requires r >= 1");
                return chain(rank);
            case 'B': {
                if (rank < 2) throw UsageError("B_r requires r >= 2");
                auto a = chain(rank);
                a[rank - 2][rank - 1] = -2;
                return a;
            }
            case 'C': {
                if (rank < 2) throw UsageError("C_r requires r >= 2");
                auto a = chain(rank);
                a[rank - 1][rank - 2] = -2;
                return a;
            }
            case 'D': {
                if (rank < 3) throw UsageError("D_r requires r >= 3");
                auto a = chain(rank);
                if (rank > 3) {
                    a[rank - 2][rank - 1] = a[rank - 1][rank - 2] = 0;
                    a[rank - 3][rank - 1] = a[rank - 1][rank - 3] = -1;
                } else {
                    // D_3 = A_3 with the branch node in the middle
                    a = chain(3);
                }
                return a;
            }
            case 'E': {
                if (rank < 6 || rank > 8) throw UsageError("E_r requires r in {6,7,8}");
                std::vector<std::vector<long>> a(rank, std::vector<long>(rank));
                for (int i = 0; i < rank; ++i) a[i][i] = 2;
                auto link = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
                link(0, 2);
                for (int i = 2; i + 1 < rank; ++i) link(i, i + 1);
                link(1, 3);
                return a;
            }
            case 'F': {
                if (rank != 4) throw UsageError("F_r requires r = 4");
                auto a = chain(4);
                a[1][2] = -2;
                return a;
            }
            case 'G': {
                if (rank != 2) throw UsageError("G_r requires r = 2");
                return {{2, -1}, {-3, 2}};
            }
            default:
                throw UsageError(std::string("unknown family '") + family + "'");
        }
    }

    void init() {
        const int r = rank_;
        // symmetrizer d_i with A * diag(d) symmetric, long roots at d = 1
        sym_d_.assign(r, Rational(0));
        sym_d_[0] = 1;
        std::deque<int> queue{0};
        std::vector<bool> done(r, false);
        done[0] = true;
        while (!queue.empty()) {
            int i = queue.front();
            queue.pop_front();
            for (int j = 0; j < r; ++j) {
                if (done[j] || cartan_[i][j] == 0 || i == j) continue;
                sym_d_[j] = sym_d_[i] * cartan_[j][i] / cartan_[i][j];
                done[j] = true;
                queue.push_back(j);
            }
        }
        for (int i = 0; i < r; ++i)
            if (!done[i]) throw InternalError("Dynkin diagram not connected");
        Rational dmax = *std::max_element(sym_d_.begin(), sym_d_.end());
        for (auto& d : sym_d_) d /= dmax;

        cartan_inv_ = invert(cartan_);
        // (w_i, w_j) = (A^{-1})_{ij} d_j
        quad_.assign(r, std::vector<Rational>(r));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) quad_[i][j] = cartan_inv_[i][j] * sym_d_[j];
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                if (quad_[i][j] != quad_[j][i]) throw InternalError("quadratic form not symmetric");
        form_denominator_ = 1;
        for (const auto& row : quad_)
            for (const auto& q : row) form_denominator_ = lcm_long(form_denominator_, to_long(denominator(q)));

        rho_.assign(r, 1);

        // roots: closure of the simple roots (rows of A) under simple reflections
        std::set<FiniteWeight> roots;
        std::deque<FiniteWeight> queue2;
        for (int i = 0; i < r; ++i) {
            FiniteWeight alpha(cartan_[i].begin(), cartan_[i].end());
            if (roots.insert(alpha).second) queue2.push_back(alpha);
        }
        while (!queue2.empty()) {
            FiniteWeight w = std::move(queue2.front());
            queue2.pop_front();
            for (int i = 0; i < r; ++i) {
                FiniteWeight y = reflect_raw(i, w);
                if (roots.insert(y).second) queue2.push_back(y);
            }
        }
        pos_roots_.clear();
        std::vector<Rational> best_height;
        Rational max_h = -1;
        for (const FiniteWeight& alpha : roots) {
            Rational h = 0;
            bool positive = true;
            for (int i = 0; i < r; ++i) {
                Rational c = 0;
                for (int j = 0; j < r; ++j) c += Rational(alpha[j]) * cartan_inv_[j][i];
                if (!is_integer(c)) throw InternalError("root with non-integral simple-root coordinates");
                if (c < 0) positive = false;
                h += c;
            }
            if (!positive) continue;
            pos_roots_.push_back(alpha);
            if (h > max_h) {
                max_h = h;
                theta_ = alpha;
            }
        }
        if (2 * pos_roots_.size() != roots.size())
            throw InternalError("positive roots are not half of all roots");

        // comarks a_i^vee from theta = sum c_i alpha_i via a_i^vee = c_i d_i
        comarks_.assign(r, 0);
        long sum = 0;
        for (int i = 0; i < r; ++i) {
            Rational c = 0;
            for (int j = 0; j < r; ++j) c += Rational(theta_[j]) * cartan_inv_[j][i];
            Rational cm = c * sym_d_[i];
            if (!is_integer(cm)) throw InternalError("non-integral comark");
            comarks_[i] = to_long(numerator(cm));
            sum += comarks_[i];
        }
        h_dual_ = 1 + sum;

        // |P / Q^vee| = det(A) / prod d_i
        Rational det = determinant(cartan_);
        Rational idx = det;
        for (const auto& d : sym_d_) idx /= d;
        if (!is_integer(idx) || idx <= 0) throw InternalError("lattice index not a positive integer");
        center_index_ = to_long(numerator(idx));

        // internal consistency: theta long, h_dual = 1 + (rho, theta^vee)
        if (inner(theta_, theta_) != 2) throw InternalError("highest root not normalized to length^2 = 2");
        Rational pairing = inner(rho_, theta_);  // theta^vee = theta since (theta,theta) = 2
        if (Rational(h_dual_) != 1 + pairing) throw InternalError("dual Coxeter number mismatch");
    }

    FiniteWeight reflect_raw(int i, FiniteWeight x) const {
        long c = x[i];
        if (c != 0)
            for (int j = 0; j < rank_; ++j) x[j] -= c * cartan_[i][j];
        return x;
    }

    static std::vector<std::vector<Rational>> invert(const std::vector<std::vector<long>>& m) {
        const int n = static_cast<int>(m.size());
        std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) a[i][j] = m[i][j];
            a[i][n + i] = 1;
        }
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int rr = col; rr < n; ++rr)
                if (a[rr][col] != 0) { piv = rr; break; }
            if (piv < 0) throw InternalError("singular Cartan matrix");
            std::swap(a[col], a[piv]);
            Rational p = a[col][col];
            for (auto& v : a[col]) v /= p;
            for (int rr = 0; rr < n; ++rr) {
                if (rr == col || a[rr][col] == 0) continue;
                Rational f = a[rr][col];
                for (int cc = 0; cc < 2 * n; ++cc) a[rr][cc] -= f * a[col][cc];
            }
        }
        std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
        return inv;
    }

    static Rational determinant(const std::vector<std::vector<long>>& m) {
        const int n = static_cast<int>(m.size());
        std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a[i][j] = m[i][j];
        Rational det = 1;
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int rr = col; rr < n; ++rr)
                if (a[rr][col] != 0) { piv = rr; break; }
            if (piv < 0) return 0;
            if (piv != col) {
                std::swap(a[col], a[piv]);
                det = -det;
            }
            det *= a[col][col];
            Rational p = a[col][col];
            for (int rr = col + 1; rr < n; ++rr) {
                if (a[rr][col] == 0) continue;
                Rational f = a[rr][col] / p;
                for (int cc = col; cc < n; ++cc) a[rr][cc] -= f * a[col][cc];
            }
        }
        return det;
    }

    char family_ = 0;
    int rank_ = 0;
    std::vector<std::vector<long>> cartan_;
    std::vector<std::vector<Rational>> cartan_inv_;
    std::vector<std::vector<Rational>> quad_;
    std::vector<Rational> sym_d_;
    std::vector<FiniteWeight> pos_roots_;
    FiniteWeight rho_, theta_;
    std::vector<long> comarks_;
    long h_dual_ = 0;
    long center_index_ = 0;
    long form_denominator_ = 1;
};

}  // namespace galink
