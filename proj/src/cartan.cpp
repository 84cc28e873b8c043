#include "hyperroot/cartan.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace hyperroot {

bool GCM::symmetric() const {
    int n = rank();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (a[i][j] != a[j][i]) return false;
    return true;
}

std::vector<int> GCM::component_of(int start, const std::vector<bool>& alive) const {
    std::vector<int> comp;
    std::vector<bool> seen(rank(), false);
    std::vector<int> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        comp.push_back(v);
        for (int w = 0; w < rank(); ++w) {
            if (alive[w] && !seen[w] && a[v][w] != 0 && v != w) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    std::sort(comp.begin(), comp.end());
    return comp;
}

bool GCM::indecomposable() const {
    if (rank() == 0) return false;
    std::vector<bool> alive(rank(), true);
    return static_cast<int>(component_of(0, alive).size()) == rank();
}

std::string GCM::content_hash() const {
    Fnv1a h;
    h.feed(static_cast<long long>(rank()));
    for (const auto& row : a)
        for (long long v : row) h.feed(v);
    return h.hex();
}

std::string GCM::to_text() const {
    std::ostringstream os;
    for (int i = 0; i < rank(); ++i) {
        if (i) os << ';';
        for (int j = 0; j < rank(); ++j) {
            if (j) os << ',';
            os << a[i][j];
        }
    }
    return os.str();
}

namespace {

// Symmetrizer: solve d_i a_ij = d_j a_ji over each diagram component,
// seed d = 1, propagate along edges, then check all constraints.  Returns
// the per-component-normalized integer vector, or nothing if inconsistent.
std::optional<std::vector<Rat>> solve_symmetrizer(const IntMatrix& a) {
    int n = static_cast<int>(a.size());
    std::vector<Rat> d(n, Rat(0));
    std::vector<int> comp_id(n, -1);
    int ncomp = 0;
    for (int s = 0; s < n; ++s) {
        if (comp_id[s] >= 0) continue;
        int cid = ncomp++;
        comp_id[s] = cid;
        d[s] = 1;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w = 0; w < n; ++w) {
                if (w == v || a[v][w] == 0) continue;
                Rat dw = d[v] * make_rat(a[v][w]) / make_rat(a[w][v]);
                if (comp_id[w] < 0) {
                    comp_id[w] = cid;
                    d[w] = dw;
                    stack.push_back(w);
                } else if (d[w] != dw) {
                    return std::nullopt;  // inconsistent cycle
                }
            }
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (d[i] * make_rat(a[i][j]) != d[j] * make_rat(a[j][i])) return std::nullopt;
    // Per component, scale to the smallest positive integer vector.
    for (int cid = 0; cid < ncomp; ++cid) {
        Int lcm_den = 1, gcd_num = 0;
        for (int i = 0; i < n; ++i)
            if (comp_id[i] == cid) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), d[i].get_den().get_mpz_t());
        for (int i = 0; i < n; ++i)
            if (comp_id[i] == cid) {
                Int scaled = numerator(d[i] * Rat(lcm_den));
                mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), scaled.get_mpz_t());
            }
        for (int i = 0; i < n; ++i)
            if (comp_id[i] == cid) d[i] = d[i] * Rat(lcm_den) / Rat(gcd_num);
    }
    return d;
}

IntMatrix submatrix(const IntMatrix& a, const std::vector<int>& idx) {
    IntMatrix s(idx.size(), std::vector<long long>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) s[i][j] = a[idx[i]][idx[j]];
    return s;
}

// det of the leading k x k block, exact (Bareiss with row pivoting).
Int leading_minor(const IntMatrix& a, int k) {
    std::vector<std::vector<Int>> m(k, std::vector<Int>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m[i][j] = make_int(a[i][j]);
    Int prev = 1;
    int sign = 1;
    for (int col = 0; col < k - 1; ++col) {
        if (m[col][col] == 0) {
            int piv = -1;
            for (int r = col + 1; r < k; ++r)
                if (m[r][col] != 0) { piv = r; break; }
            if (piv < 0) return 0;
            std::swap(m[col], m[piv]);
            sign = -sign;
        }
        for (int r = col + 1; r < k; ++r) {
            for (int c = col + 1; c < k; ++c) {
                m[r][c] = (m[r][c] * m[col][col] - m[r][col] * m[col][c]) / prev;
            }
            m[r][col] = 0;
        }
        prev = m[col][col];
    }
    return sign * m[k - 1][k - 1];
}

// Characteristic polynomial of B = diag(d) * A, Faddeev-LeVerrier over
// rationals.  Returns coefficients of lambda^n + c[0] lambda^{n-1} + ... + c[n-1].
std::vector<Rat> charpoly(const GCM& g) {
    int n = g.rank();
    const auto& d = *g.d;
    std::vector<std::vector<Rat>> b(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b[i][j] = d[i] * make_rat(g.a[i][j]);
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));  // M_0 = 0 -> M_1 = B below
    std::vector<Rat> c(n);
    std::vector<std::vector<Rat>> cur = b;
    for (int k = 1; k <= n; ++k) {
        Rat tr = 0;
        for (int i = 0; i < n; ++i) tr += cur[i][i];
        c[k - 1] = -tr / Rat(k);
        if (k == n) break;
        // next = B * (cur + c[k-1] * I)
        std::vector<std::vector<Rat>> tmp = cur;
        for (int i = 0; i < n; ++i) tmp[i][i] += c[k - 1];
        std::vector<std::vector<Rat>> next(n, std::vector<Rat>(n, Rat(0)));
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l) {
                if (b[i][l] == 0) continue;
                for (int j = 0; j < n; ++j) next[i][j] += b[i][l] * tmp[l][j];
            }
        cur = std::move(next);
    }
    return c;
}

int sign_of(const Rat& q) { return mpq_sgn(q.get_mpq_t()); }

// Number of negative eigenvalues of B, exact.  B is symmetric so all roots
// of the characteristic polynomial are real and Descartes' rule is sharp:
// the count of positive roots of p(-lambda) equals its coefficient sign
// changes (zeros skipped).
int negative_eigenvalue_count(const GCM& g) {
    int n = g.rank();
    std::vector<Rat> c = charpoly(g);
    // p(lambda) = lambda^n + c0 lambda^{n-1} + ... + c_{n-1}
    // p(-lambda): coefficient of lambda^{n-k} picks up (-1)^{n-k}.
    std::vector<int> signs;
    signs.push_back((n % 2 == 0) ? 1 : -1);  // leading coefficient of p(-x)
    for (int k = 1; k <= n; ++k) {
        int s = sign_of(c[k - 1]);
        if (s == 0) continue;
        int parity = ((n - k) % 2 == 0) ? 1 : -1;
        signs.push_back(s * parity);
    }
    int changes = 0;
    for (std::size_t i = 1; i < signs.size(); ++i)
        if (signs[i] != signs[i - 1]) ++changes;
    return changes;
}

Kind kind_of_indecomposable(const GCM& g) {
    int n = g.rank();
    if (!g.symmetrizable()) return Kind::Indefinite;  // finite/affine are symmetrizable
    bool proper_positive = true;
    for (int k = 1; k < n; ++k)
        if (leading_minor(g.a, k) <= 0) { proper_positive = false; break; }
    if (!proper_positive) return Kind::Indefinite;
    Int dn = leading_minor(g.a, n);
    if (dn > 0) return Kind::Finite;
    if (dn == 0) return Kind::Affine;
    return Kind::Indefinite;
}

}  // namespace

GCM validate_gcm(const IntMatrix& a) {
    int n = static_cast<int>(a.size());
    if (n == 0) throw NotGCMError("empty matrix");
    for (const auto& row : a)
        if (static_cast<int>(row.size()) != n) throw NotGCMError("matrix is not square");
    for (int i = 0; i < n; ++i) {
        if (a[i][i] != 2) throw NotGCMError("diagonal entry != 2 at index " + std::to_string(i));
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (a[i][j] > 0)
                throw NotGCMError("positive off-diagonal entry at (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")");
            if ((a[i][j] == 0) != (a[j][i] == 0))
                throw NotGCMError("asymmetric zero pattern at (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")");
        }
    }
    GCM g;
    g.a = a;
    g.d = solve_symmetrizer(a);
    return g;
}

Int det(const IntMatrix& a) {
    return a.empty() ? Int(1) : leading_minor(a, static_cast<int>(a.size()));
}

std::string kind_name(Kind k) {
    switch (k) {
        case Kind::Finite: return "finite";
        case Kind::Affine: return "affine";
        default: return "indefinite";
    }
}

AlgebraType classify_indecomposable(const GCM& g) {
    if (!g.indecomposable()) throw DomainError("classify_indecomposable: matrix is decomposable");
    int n = g.rank();
    AlgebraType t;
    t.det = det(g.a);
    t.kind = kind_of_indecomposable(g);
    if (t.kind == Kind::Indefinite && n >= 2) {
        bool hyper = true, compact = true;
        for (int drop = 0; drop < n && hyper; ++drop) {
            std::vector<bool> alive(n, true);
            alive[drop] = false;
            std::vector<bool> handled(n, false);
            for (int s = 0; s < n; ++s) {
                if (s == drop || handled[s]) continue;
                std::vector<int> comp = g.component_of(s, alive);
                for (int v : comp) handled[v] = true;
                GCM sub = validate_gcm(submatrix(g.a, comp));
                Kind k = kind_of_indecomposable(sub);
                if (k == Kind::Indefinite) { hyper = false; break; }
                if (k == Kind::Affine) compact = false;
            }
        }
        t.hyperbolic = hyper;
        t.compact_hyperbolic = hyper && compact;
    }
    if (g.symmetrizable() && t.det != 0)
        t.lorentzian = (negative_eigenvalue_count(g) == 1);
    return t;
}

std::vector<ComponentType> classify(const GCM& g) {
    std::vector<ComponentType> out;
    std::vector<bool> alive(g.rank(), true), handled(g.rank(), false);
    for (int s = 0; s < g.rank(); ++s) {
        if (handled[s]) continue;
        std::vector<int> comp = g.component_of(s, alive);
        for (int v : comp) handled[v] = true;
        GCM sub = validate_gcm(submatrix(g.a, comp));
        out.push_back({comp, classify_indecomposable(sub)});
    }
    return out;
}

namespace {

long long coroot_pairing(const IntMatrix& a, int i, const std::vector<long long>& v) {
    long long s = 0;
    for (std::size_t j = 0; j < v.size(); ++j) s += a[i][j] * v[j];
    return s;
}

// All positive roots of a finite-type GCM by upward closure; returns the
// unique highest root.  Uses root strings: alpha + alpha_i is a root iff
// q = p - <alpha, alpha_i^vee> > 0 where p is the depth of the string below.
std::vector<long long> highest_root(const GCM& g) {
    int n = g.rank();
    struct VecHash {
        std::size_t operator()(const std::vector<long long>& v) const {
            Fnv1a h;
            for (long long x : v) h.feed(x);
            return static_cast<std::size_t>(h.state);
        }
    };
    std::unordered_set<std::vector<long long>, VecHash> roots;
    std::vector<std::vector<long long>> frontier;
    for (int i = 0; i < n; ++i) {
        std::vector<long long> e(n, 0);
        e[i] = 1;
        roots.insert(e);
        frontier.push_back(e);
    }
    std::vector<long long> top;
    long long guard = 0;
    while (!frontier.empty()) {
        if (++guard > 100000) throw WrongTypeError("extend: root closure did not terminate (not finite type?)");
        std::vector<std::vector<long long>> next;
        for (const auto& r : frontier) {
            for (int i = 0; i < n; ++i) {
                long long pairing = coroot_pairing(g.a, i, r);
                long long p = 0;
                std::vector<long long> down = r;
                while (true) {
                    down[i] -= 1;
                    bool nonneg = std::all_of(down.begin(), down.end(), [](long long x) { return x >= 0; });
                    bool zero = std::all_of(down.begin(), down.end(), [](long long x) { return x == 0; });
                    if (!nonneg || zero || !roots.count(down)) break;
                    ++p;
                }
                if (p - pairing > 0) {
                    std::vector<long long> up = r;
                    up[i] += 1;
                    if (roots.insert(up).second) next.push_back(up);
                }
            }
        }
        if (next.empty()) {
            // frontier holds the maximal shell processed; highest root is the
            // unique maximum-height element of the whole set
            long long best = -1;
            int ties = 0;
            for (const auto& r : roots) {
                long long h = std::accumulate(r.begin(), r.end(), 0ll);
                if (h > best) { best = h; top = r; ties = 1; }
                else if (h == best) ++ties;
            }
            if (ties != 1) throw WrongTypeError("extend: highest root is not unique");
        }
        frontier = std::move(next);
    }
    return top;
}

}  // namespace

GCM extend(const GCM& g) {
    if (!g.indecomposable()) throw WrongTypeError("extend: matrix must be indecomposable");
    AlgebraType t = classify_indecomposable(g);
    if (t.kind != Kind::Finite) throw WrongTypeError("extend: affinization requires finite type");
    int n = g.rank();
    std::vector<long long> theta = highest_root(g);
    const auto& d = *g.d;  // finite type is always symmetrizable
    // (theta|theta) and (alpha_i|theta) in the normalization B = diag(d)A
    Rat theta_norm = 0;
    std::vector<Rat> pairing_row(n), pairing_col(n);
    for (int i = 0; i < n; ++i) {
        long long p = coroot_pairing(g.a, i, theta);       // <theta, alpha_i^vee>
        pairing_col[i] = make_rat(-p);                          // a[i][new] = -<theta, alpha_i^vee>
        theta_norm += d[i] * make_rat(p) * make_rat(theta[i]);       // theta^T B theta = sum d_i p_i theta_i
    }
    for (int i = 0; i < n; ++i) {
        long long p = coroot_pairing(g.a, i, theta);
        pairing_row[i] = Rat(-2) * d[i] * make_rat(p) / theta_norm;  // a[new][i] = -<alpha_i, theta^vee>
    }
    IntMatrix out(n + 1, std::vector<long long>(n + 1, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i][j] = g.a[i][j];
    out[n][n] = 2;
    for (int i = 0; i < n; ++i) {
        if (!is_integral(pairing_col[i]) || !is_integral(pairing_row[i]))
            throw IntegralityError("extend: non-integer pairing against theta");
        out[i][n] = to_ll(numerator(pairing_col[i]));
        out[n][i] = to_ll(numerator(pairing_row[i]));
    }
    return validate_gcm(out);
}

GCM overextend(const GCM& g) {
    if (!g.indecomposable()) throw WrongTypeError("overextend: matrix must be indecomposable");
    AlgebraType t = classify_indecomposable(g);
    if (t.kind != Kind::Affine) throw WrongTypeError("overextend: input must be affine");
    int n = g.rank();
    // Find the affine 0-node: deleting it leaves a connected finite diagram
    // whose affinization reproduces g (with the deleted node last).
    for (int v = 0; v < n; ++v) {
        std::vector<int> rest;
        for (int i = 0; i < n; ++i)
            if (i != v) rest.push_back(i);
        GCM sub = validate_gcm(submatrix(g.a, rest));
        if (!sub.indecomposable()) continue;
        if (classify_indecomposable(sub).kind != Kind::Finite) continue;
        GCM aff = extend(sub);
        std::vector<int> perm = rest;  // g reindexed with v moved last
        perm.push_back(v);
        if (aff.a == submatrix(g.a, perm)) {
            GCM reordered = validate_gcm(submatrix(g.a, perm));
            return attach_by_single_edge(reordered, n - 1);
        }
    }
    throw WrongTypeError("overextend: no untwisted affine 0-node found (twisted affine input?)");
}

GCM attach_by_single_edge(const GCM& g, int attach) {
    int n = g.rank();
    if (attach < 0 || attach >= n) throw DomainError("attach index out of range");
    IntMatrix out(n + 1, std::vector<long long>(n + 1, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i][j] = g.a[i][j];
    out[n][n] = 2;
    out[n][attach] = out[attach][n] = -1;
    return validate_gcm(out);
}

namespace {

GCM e8() {
    // Bourbaki numbering: chain 1-3-4-5-6-7-8 with 2 attached to 4.
    IntMatrix a(8, std::vector<long long>(8, 0));
    for (int i = 0; i < 8; ++i) a[i][i] = 2;
    auto edge = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
    edge(0, 2);
    edge(2, 3);
    edge(3, 4);
    edge(4, 5);
    edge(5, 6);
    edge(6, 7);
    edge(1, 3);
    return validate_gcm(a);
}

}  // namespace

GCM preset(const std::string& name) {
    if (name == "F")
        return validate_gcm({{2, -2, 0}, {-2, 2, -1}, {0, -1, 2}});
    if (name == "A1")
        return validate_gcm({{2}});
    if (name == "E8")
        return e8();
    if (name == "E9")
        return extend(e8());
    if (name == "E10")
        return overextend(extend(e8()));
    if (name == "E11")
        return attach_by_single_edge(overextend(extend(e8())), 9);
    if (name.rfind("A1(", 0) == 0 && name.back() == ')') {
        std::string args = name.substr(3, name.size() - 4);
        auto comma = args.find(',');
        if (comma == std::string::npos) throw NotGCMError("preset A1(a,b): expected two integers");
        try {
            long long a = std::stoll(args.substr(0, comma));
            long long b = std::stoll(args.substr(comma + 1));
            return validate_gcm({{2, -b}, {-a, 2}});
        } catch (const std::logic_error&) {
            throw NotGCMError("preset A1(a,b): bad integer arguments");
        }
    }
    throw NotGCMError("unknown preset '" + name + "'");
}

GCM parse_gcm(const std::string& text) {
    std::string s = text;
    // trim
    auto notspace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    if (s.empty()) throw NotGCMError("empty matrix text");
    if (s.front() == '{') {
        nlohmann::json j = nlohmann::json::parse(s, nullptr, false);
        if (j.is_discarded() || !j.contains("matrix") || !j["matrix"].is_array())
            throw NotGCMError("bad JSON matrix (expected {\"matrix\": [[...]]})");
        IntMatrix a;
        for (const auto& row : j["matrix"]) {
            std::vector<long long> r;
            for (const auto& v : row) {
                if (!v.is_number_integer()) throw NotGCMError("matrix entries must be integers");
                r.push_back(v.get<long long>());
            }
            a.push_back(std::move(r));
        }
        return validate_gcm(a);
    }
    if (std::isalpha(static_cast<unsigned char>(s.front()))) return preset(s);
    IntMatrix a;
    std::stringstream rows(s);
    std::string row;
    while (std::getline(rows, row, ';')) {
        std::vector<long long> r;
        std::stringstream cells(row);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            try {
                r.push_back(std::stoll(cell));
            } catch (const std::logic_error&) {
                throw NotGCMError("bad matrix entry '" + cell + "'");
            }
        }
        a.push_back(std::move(r));
    }
    return validate_gcm(a);
}

}  // namespace hyperroot
