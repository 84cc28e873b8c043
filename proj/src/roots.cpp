#include "hyperroot/roots.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace hyperroot {

long long height(const RootVector& v) {
    return std::accumulate(v.begin(), v.end(), 0ll);
}

bool in_positive_cone(const RootVector& v) {
    bool nonzero = false;
    for (long long c : v) {
        if (c < 0) return false;
        if (c > 0) nonzero = true;
    }
    return nonzero;
}

BilinearForm::BilinearForm(const GCM& g) {
    if (!g.symmetrizable())
        throw NotSymmetrizableError("bilinear form requires a symmetrizable matrix");
    int n = g.rank();
    d_.resize(n);
    for (int i = 0; i < n; ++i) d_[i] = to_ll(numerator((*g.d)[i]));
    b_.assign(n, std::vector<long long>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b_[i][j] = d_[i] * g.a[i][j];
}

long long BilinearForm::pair(const RootVector& x, const RootVector& y) const {
    long long s = 0;
    for (int i = 0; i < rank(); ++i) {
        if (x[i] == 0) continue;
        long long row = 0;
        for (int j = 0; j < rank(); ++j) row += b_[i][j] * y[j];
        s += x[i] * row;
    }
    return s;
}

long long BilinearForm::rho_pair(const RootVector& x) const {
    long long s = 0;
    for (int i = 0; i < rank(); ++i) s += d_[i] * x[i];
    return s;
}

Rat bilinear(const GCM& g, const RootVector& x, const RootVector& y) {
    return make_rat(BilinearForm(g).pair(x, y));
}

Rat rho_pairing(const GCM& g, const RootVector& x) {
    return make_rat(BilinearForm(g).rho_pair(x));
}

RootVector reflect(const GCM& g, int i, const RootVector& v) {
    if (i < 0 || i >= g.rank()) throw DomainError("reflect: index out of range");
    long long p = 0;
    for (int j = 0; j < g.rank(); ++j) p += g.a[i][j] * v[j];
    RootVector out = v;
    out[i] -= p;
    return out;
}

bool support_connected(const GCM& g, const RootVector& v) {
    int n = g.rank();
    std::vector<bool> alive(n);
    int start = -1, count = 0;
    for (int i = 0; i < n; ++i) {
        alive[i] = v[i] != 0;
        if (alive[i]) {
            ++count;
            if (start < 0) start = i;
        }
    }
    if (count == 0) return false;
    return static_cast<int>(g.component_of(start, alive).size()) == count;
}

RootKind classify_vector(const GCM& g, const RootVector& v) {
    int n = g.rank();
    if (static_cast<int>(v.size()) != n) throw DomainError("vector length does not match rank");
    bool pos = false, neg = false;
    for (long long c : v) {
        if (c > 0) pos = true;
        if (c < 0) neg = true;
    }
    if (pos && neg) return RootKind::NonRoot;
    if (!pos && !neg) return RootKind::NonRoot;  // zero vector
    RootVector cur = v;
    if (neg)
        for (long long& c : cur) c = -c;
    while (true) {
        // Simple root reached: real.
        if (height(cur) == 1) return RootKind::Real;
        int descent = -1;
        bool fundamental = true;
        for (int i = 0; i < n && descent < 0; ++i) {
            long long p = 0;
            for (int j = 0; j < n; ++j) p += g.a[i][j] * cur[j];
            if (p > 0) {
                descent = i;
                fundamental = false;
            }
        }
        if (fundamental) {
            // Fundamental cone: imaginary iff the support is connected
            // (every root has connected support).
            return support_connected(g, cur) ? RootKind::Imaginary : RootKind::NonRoot;
        }
        cur = reflect(g, descent, cur);
        bool any_neg = std::any_of(cur.begin(), cur.end(), [](long long c) { return c < 0; });
        if (any_neg) return RootKind::NonRoot;  // left the positive cone mid-descent
    }
}

bool is_real_root(const GCM& g, const RootVector& v) {
    return classify_vector(g, v) == RootKind::Real;
}

bool is_positive_imaginary_root(const GCM& g, const RootVector& v) {
    return in_positive_cone(v) && classify_vector(g, v) == RootKind::Imaginary;
}

namespace {

// w as a matrix on root coordinates, stored column-major: col[j] = w(alpha_j).
using WeylMatrix = std::vector<RootVector>;

}  // namespace

std::vector<WeylElement> enumerate_weyl_sums(const GCM& g, long long H) {
    if (H < 1) throw DomainError("enumerate_weyl_sums: height bound must be >= 1");
    int n = g.rank();
    struct Node {
        RootVector sw;
        WeylMatrix w;
    };
    WeylMatrix identity(n, RootVector(n, 0));
    for (int j = 0; j < n; ++j) identity[j][j] = 1;
    std::unordered_set<RootVector, RootVectorHash> seen;
    seen.insert(RootVector(n, 0));
    std::vector<Node> frontier{{RootVector(n, 0), identity}};
    std::vector<WeylElement> out;
    int length = 0;
    while (!frontier.empty()) {
        ++length;
        std::vector<Node> next;
        for (const Node& node : frontier) {
            for (int i = 0; i < n; ++i) {
                const RootVector& wai = node.w[i];
                if (!in_positive_cone(wai)) continue;  // length would drop
                long long h = height(node.sw) + height(wai);
                if (h > H) continue;
                RootVector sw = node.sw;
                for (int k = 0; k < n; ++k) sw[k] += wai[k];
                if (!seen.insert(sw).second) continue;
                // w' = w * r_i: col_j -= a[i][j] * col_i, col_i flips last.
                WeylMatrix next_w = node.w;
                for (int j = 0; j < n; ++j) {
                    if (j == i || g.a[i][j] == 0) continue;
                    for (int k = 0; k < n; ++k) next_w[j][k] -= g.a[i][j] * wai[k];
                }
                for (int k = 0; k < n; ++k) next_w[i][k] = -wai[k];
                out.push_back({sw, length, (length % 2 == 0) ? -1 : 1});
                next.push_back({std::move(sw), std::move(next_w)});
            }
        }
        frontier = std::move(next);
    }
    std::sort(out.begin(), out.end(), [](const WeylElement& a, const WeylElement& b) {
        long long ha = height(a.sw), hb = height(b.sw);
        if (ha != hb) return ha < hb;
        return a.sw < b.sw;
    });
    return out;
}

RootVector parse_root(const std::string& text, int rank) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (!s.empty() && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    if (s.empty()) throw DomainError("empty root vector");
    RootVector v;
    std::stringstream cells(s);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
        try {
            v.push_back(std::stoll(cell));
        } catch (const std::logic_error&) {
            throw DomainError("bad root coordinate '" + cell + "'");
        }
        if (std::llabs(v.back()) > 1000000)
            throw DomainError("root coordinate out of supported range: " + cell);
    }
    if (static_cast<int>(v.size()) != rank)
        throw DomainError("root vector has " + std::to_string(v.size()) + " coordinates, expected " +
                          std::to_string(rank));
    return v;
}

std::string root_to_text(const RootVector& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
    os << ')';
    return os.str();
}

}  // namespace hyperroot
