#include "hyperroot/multiplicity.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include <json.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

namespace hyperroot {

namespace {

Rat make_frac(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

long long coords_gcd(const RootVector& v) {
    long long g = 0;
    for (long long c : v) g = std::gcd(g, c);
    return g;
}

RootVector scaled(const RootVector& v, long long k) {
    RootVector out = v;
    for (long long& c : out) c *= k;
    return out;
}

RootVector divided(const RootVector& v, long long k) {
    RootVector out = v;
    for (long long& c : out) c /= k;
    return out;
}

bool sorted_by_height_lex(const RootVector& a, const RootVector& b) {
    long long ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return a < b;
}

}  // namespace

// ---------------------------------------------------------------- MultTable

std::string MultTable::to_json() const {
    nlohmann::ordered_json j;
    j["version"] = 1;
    j["gcm_hash"] = gcm_id;
    j["matrix"] = matrix;
    j["frontier"] = frontier;
    std::vector<RootVector> keys;
    keys.reserve(entries.size());
    for (const auto& [v, m] : entries) keys.push_back(v);
    std::sort(keys.begin(), keys.end(), sorted_by_height_lex);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& v : keys)
        rows.push_back(nlohmann::ordered_json::array({v, entries.at(v).get_str()}));
    j["entries"] = std::move(rows);
    return j.dump();
}

MultTable MultTable::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw CacheError("cache file is not valid JSON");
    MultTable t;
    try {
        if (j.at("version").get<int>() != 1) throw CacheError("unsupported cache version");
        t.gcm_id = j.at("gcm_hash").get<std::string>();
        t.matrix = j.at("matrix").get<IntMatrix>();
        t.frontier = j.at("frontier").get<long long>();
        for (const auto& row : j.at("entries")) {
            RootVector v = row.at(0).get<RootVector>();
            Int m(row.at(1).get<std::string>());
            if (m < 0) throw CacheError("negative multiplicity in cache");
            t.entries.emplace(std::move(v), std::move(m));
        }
    } catch (const nlohmann::json::exception& e) {
        throw CacheError(std::string("malformed cache file: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw CacheError("malformed multiplicity value in cache");
    }
    if (t.frontier < 0) throw CacheError("negative frontier in cache");
    return t;
}

std::string default_cache_dir() {
    if (const char* dir = std::getenv("HYPERROOT_CACHE_DIR"))
        if (*dir) return dir;
    return "./cache";
}

// ----------------------------------------------------------- PetersonEngine

PetersonEngine::PetersonEngine(const GCM& g, PetersonOptions opt)
    : g_(g), form_(g), opt_(std::move(opt)) {
    if (!g_.indecomposable())
        throw DomainError("multiplicity engines require an indecomposable matrix");
    table_.gcm_id = g_.content_hash();
    table_.matrix = g_.a;
    roots_by_height_.resize(2);
    support_.resize(2);
    if (!opt_.cache_dir.empty()) load_cache();
}

void PetersonEngine::load_cache() {
    namespace fs = std::filesystem;
    fs::path file = fs::path(opt_.cache_dir) / (table_.gcm_id + ".json");
    std::error_code ec;
    if (!fs::exists(file, ec)) return;
    try {
        std::ifstream in(file);
        if (!in) throw CacheError("cannot read cache file " + file.string());
        std::stringstream buf;
        buf << in.rdbuf();
        MultTable loaded = MultTable::from_json(buf.str());
        if (loaded.gcm_id != table_.gcm_id || loaded.matrix != g_.a)
            throw CacheError("cache file belongs to a different matrix");
        int n = g_.rank();
        for (const auto& [v, m] : loaded.entries) {
            if (static_cast<int>(v.size()) != n || !std::all_of(v.begin(), v.end(), [](long long c) {
                    return c >= 0;
                }))
                throw CacheError("cache entry outside the positive cone");
        }
        // Rebuild the by-height index.
        std::vector<std::vector<RootVector>> byh(loaded.frontier + 1);
        long long top = 0;
        for (const auto& [v, m] : loaded.entries) {
            if (m == 0) continue;  // explicit zeros are query records, not roots
            long long h = height(v);
            if (h < 1 || h > loaded.frontier)
                throw CacheError("positive multiplicity outside the cached frontier");
            byh[h].push_back(v);
            top = std::max(top, h);
        }
        for (auto& shell : byh) std::sort(shell.begin(), shell.end());
        // Sanity checks (a damaged shell cannot be repaired, so reject the
        // whole file): shell 1 must be exactly the simple roots, and every
        // deeper root needs a predecessor root one step down.
        if (loaded.frontier >= 1) {
            std::vector<RootVector> simples;
            for (int i = 0; i < n; ++i) {
                RootVector e(n, 0);
                e[i] = 1;
                simples.push_back(std::move(e));
            }
            std::sort(simples.begin(), simples.end());
            if (byh[1] != simples) throw CacheError("cached height-1 shell is not the simple roots");
        }
        for (long long h = 2; h <= top; ++h)
            for (const auto& v : byh[h]) {
                bool pred = false;
                for (int i = 0; i < n && !pred; ++i) {
                    if (v[i] == 0) continue;
                    RootVector p = v;
                    p[i] -= 1;
                    pred = std::binary_search(byh[h - 1].begin(), byh[h - 1].end(), p);
                }
                if (!pred) throw CacheError("cached root without a predecessor at height " +
                                            std::to_string(h));
            }
        // A frontier above the last populated shell cannot be verified (the
        // tail shells may simply be missing); clamp to what is present.
        if (loaded.frontier > top) {
            if (top == 0) throw CacheError("cache claims a frontier but holds no roots");
            cache_warning_ = "cache frontier clamped from " + std::to_string(loaded.frontier) +
                             " to last populated height " + std::to_string(top);
            loaded.frontier = top;
            byh.resize(top + 1);
        }
        table_ = std::move(loaded);
        roots_by_height_ = std::move(byh);
        roots_by_height_.resize(std::max<std::size_t>(roots_by_height_.size(), 2));
        support_.assign(roots_by_height_.size(), {});
        computed_ = table_.frontier;
        for (long long h = 1; h <= computed_; ++h) add_support_for_height(h);
    } catch (const CacheError& e) {
        cache_warning_ = e.what();
        table_ = MultTable{};
        table_.gcm_id = g_.content_hash();
        table_.matrix = g_.a;
        roots_by_height_.assign(2, {});
        support_.assign(2, {});
        c_.clear();
        computed_ = 0;
    }
}

void PetersonEngine::flush_cache() const {
    if (opt_.cache_dir.empty()) return;
    namespace fs = std::filesystem;
    fs::path dir(opt_.cache_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    fs::path file = dir / (table_.gcm_id + ".json");
    fs::path tmp = dir / (table_.gcm_id + ".json.tmp");
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw CacheError("cannot write cache file " + tmp.string());
        out << table_.to_json();
        if (!out) throw CacheError("short write to " + tmp.string());
    }
    fs::rename(tmp, file, ec);
    if (ec) throw CacheError("cannot replace cache file " + file.string() + ": " + ec.message());
}

Rat PetersonEngine::divisor_tail(const RootVector& beta, long long gcd) const {
    Rat tail = 0;
    for (long long k = 2; k <= gcd; ++k) {
        if (gcd % k != 0) continue;
        auto it = table_.entries.find(divided(beta, k));
        if (it != table_.entries.end() && it->second > 0)
            tail += make_frac(it->second, make_int(k));
    }
    return tail;
}

void PetersonEngine::add_support_for_height(long long h) {
    auto& sup = support_[h];
    for (long long k = 1; k <= h; ++k) {
        if (h % k != 0) continue;
        for (const RootVector& r : roots_by_height_[h / k]) {
            RootVector v = scaled(r, k);
            if (c_.count(v)) continue;  // k*r may coincide with k'*r'
            long long g = coords_gcd(v);
            Rat c = 0;
            for (long long m = 1; m <= g; ++m) {
                if (g % m != 0) continue;
                auto it = table_.entries.find(divided(v, m));
                if (it != table_.entries.end() && it->second > 0)
                    c += make_frac(it->second, make_int(m));
            }
            c_.emplace(v, c);
            sup.emplace_back(std::move(v), std::move(c));
        }
    }
    std::sort(sup.begin(), sup.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
}

void PetersonEngine::compute_shell(long long h) {
    int n = g_.rank();
    if (h == 1) {
        for (int i = 0; i < n; ++i) {
            RootVector e(n, 0);
            e[i] = 1;
            table_.entries.emplace(e, 1);
            roots_by_height_[1].push_back(std::move(e));
        }
        std::sort(roots_by_height_[1].begin(), roots_by_height_[1].end());
        return;
    }
    // Candidates: predecessors plus one simple root, deduplicated, in a
    // fixed order so the parallel scoring merges deterministically.
    std::unordered_set<RootVector, RootVectorHash> seen;
    std::vector<RootVector> cands;
    for (const RootVector& r : roots_by_height_[h - 1])
        for (int i = 0; i < n; ++i) {
            RootVector c = r;
            c[i] += 1;
            if (seen.insert(c).second) cands.push_back(std::move(c));
        }
    std::sort(cands.begin(), cands.end());

    struct Slot {
        Int mult;
        std::exception_ptr err;
    };
    std::vector<Slot> slots(cands.size());
    const long long count = static_cast<long long>(cands.size());
#ifdef _OPENMP
    int threads = opt_.threads > 0 ? opt_.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
#endif
    for (long long idx = 0; idx < count; ++idx) {
        try {
            const RootVector& beta = cands[idx];
            long long d_beta = form_.norm(beta) - 2 * form_.rho_pair(beta);
            Rat conv = 0;
            RootVector w(n);
            for (long long h1 = 1; 2 * h1 <= h; ++h1) {
                long long factor = (2 * h1 < h) ? 2 : 1;
                for (const auto& [v, cv] : support_[h1]) {
                    bool inside = true;
                    for (int j = 0; j < n; ++j) {
                        w[j] = beta[j] - v[j];
                        if (w[j] < 0) {
                            inside = false;
                            break;
                        }
                    }
                    if (!inside) continue;
                    auto it = c_.find(w);
                    if (it == c_.end()) continue;
                    long long pr = form_.pair(v, w);
                    if (pr == 0) continue;
                    Rat term = cv * it->second;
                    term *= make_rat(factor * pr);
                    conv += term;
                }
            }
            Rat tail = divisor_tail(beta, coords_gcd(beta));
            if (d_beta != 0) {
                Rat m = conv / make_rat(d_beta) - tail;
                if (!is_integral(m) || m < 0)
                    throw IntegralityError("recursion produced a non-integer multiplicity at " +
                                           root_to_text(beta));
                slots[idx].mult = numerator(m);
            } else if (conv != 0) {
                throw DegenerateDivisorError(
                    "(beta|beta) - 2(rho|beta) vanished with nonzero convolution at " +
                        root_to_text(beta),
                    beta);
            } else if (classify_vector(g_, beta) != RootKind::NonRoot) {
                throw DegenerateDivisorError(
                    "recursion cannot determine the multiplicity of root " + root_to_text(beta) +
                        " (vanishing divisor)",
                    beta);
            }  // else: provably not a root, multiplicity 0
        } catch (...) {
            slots[idx].err = std::current_exception();
        }
    }
    for (long long idx = 0; idx < count; ++idx)
        if (slots[idx].err) std::rethrow_exception(slots[idx].err);
    for (long long idx = 0; idx < count; ++idx)
        if (slots[idx].mult > 0) {
            table_.entries.emplace(cands[idx], slots[idx].mult);
            roots_by_height_[h].push_back(cands[idx]);
        }
}

void PetersonEngine::extend_to(long long H) {
    if (H < 0) throw DomainError("height bound must be nonnegative");
    if (H <= computed_) return;
    roots_by_height_.resize(H + 1);
    support_.resize(H + 1);
    for (long long h = computed_ + 1; h <= H; ++h) {
        compute_shell(h);
        add_support_for_height(h);
        computed_ = h;
        if (h > table_.frontier) {
            table_.frontier = h;
            flush_cache();
        }
    }
}

Int PetersonEngine::mult(const RootVector& alpha) {
    if (static_cast<int>(alpha.size()) != g_.rank())
        throw DomainError("root vector length does not match the matrix rank");
    if (!in_positive_cone(alpha))
        throw DomainError("multiplicity queries require a vector in the positive cone");
    extend_to(height(alpha));
    auto it = table_.entries.find(alpha);
    if (it != table_.entries.end()) return it->second;
    table_.entries.emplace(alpha, 0);  // explicit zero for a queried non-root
    return 0;
}

const std::vector<RootVector>& PetersonEngine::roots_of_height(long long h) const {
    if (h < 1 || h > computed_)
        throw DomainError("height " + std::to_string(h) + " has not been computed");
    return roots_by_height_[h];
}

// -------------------------------------------------------- PetersonReference

PetersonReference::PetersonReference(const GCM& g) : g_(g), form_(g) {
    if (!g_.indecomposable())
        throw DomainError("multiplicity engines require an indecomposable matrix");
    mult_.clear();
    support_.resize(2);
}

void PetersonReference::extend_to(long long H) {
    if (H <= computed_) return;
    int n = g_.rank();
    support_.resize(H + 1);
    for (long long h = computed_ + 1; h <= H; ++h) {
        // Every composition of h into n nonnegative parts, odometer order.
        RootVector beta(n, 0);
        beta[n - 1] = h;
        while (true) {
            if (h == 1) {
                // Recursion base: the simple roots.
                mult_.emplace(beta, 1);
            } else {
                long long d_beta = form_.norm(beta) - 2 * form_.rho_pair(beta);
                Rat conv = 0;
                RootVector w(n);
                for (long long h1 = 1; 2 * h1 <= h; ++h1) {
                    long long factor = (2 * h1 < h) ? 2 : 1;
                    for (const auto& [v, cv] : support_[h1]) {
                        bool inside = true;
                        for (int j = 0; j < n; ++j) {
                            w[j] = beta[j] - v[j];
                            if (w[j] < 0) {
                                inside = false;
                                break;
                            }
                        }
                        if (!inside) continue;
                        auto itc = c_.find(w);
                        if (itc == c_.end()) continue;
                        long long pr = form_.pair(v, w);
                        if (pr == 0) continue;
                        Rat term = cv * itc->second;
                        term *= make_rat(factor * pr);
                        conv += term;
                    }
                }
                long long g = coords_gcd(beta);
                Rat tail = 0;
                for (long long k = 2; k <= g; ++k) {
                    if (g % k != 0) continue;
                    auto it = mult_.find(divided(beta, k));
                    if (it != mult_.end()) tail += make_frac(it->second, make_int(k));
                }
                if (d_beta != 0) {
                    Rat m = conv / make_rat(d_beta) - tail;
                    if (!is_integral(m) || m < 0)
                        throw IntegralityError(
                            "reference recursion produced a non-integer multiplicity at " +
                            root_to_text(beta));
                    Int mi = numerator(m);
                    if (mi > 0) mult_.emplace(beta, mi);
                } else if (conv != 0) {
                    throw DegenerateDivisorError(
                        "(beta|beta) - 2(rho|beta) vanished with nonzero convolution at " +
                            root_to_text(beta),
                        beta);
                } else if (classify_vector(g_, beta) != RootKind::NonRoot) {
                    throw DegenerateDivisorError(
                        "reference recursion cannot determine the multiplicity of root " +
                            root_to_text(beta),
                        beta);
                }
            }
            // next composition
            int j = n - 1;
            while (j > 0 && beta[j] == 0) --j;
            if (j == 0) break;
            long long moved = beta[j];
            beta[j] = 0;
            beta[j - 1] += 1;
            beta[n - 1] = moved - 1;
        }
        // c-support for this height: multiples of known roots.
        for (long long k = 1; k <= h; ++k) {
            if (h % k != 0) continue;
            for (const auto& [r, m] : mult_) {
                if (height(r) != h / k) continue;
                RootVector v = scaled(r, k);
                if (c_.count(v)) continue;
                long long g = coords_gcd(v);
                Rat c = 0;
                for (long long d = 1; d <= g; ++d) {
                    if (g % d != 0) continue;
                    auto it = mult_.find(divided(v, d));
                    if (it != mult_.end()) c += make_frac(it->second, make_int(d));
                }
                c_.emplace(v, c);
                support_[h].emplace_back(std::move(v), std::move(c));
            }
        }
        computed_ = h;
    }
}

Int PetersonReference::mult(const RootVector& alpha) {
    if (static_cast<int>(alpha.size()) != g_.rank())
        throw DomainError("root vector length does not match the matrix rank");
    if (!in_positive_cone(alpha))
        throw DomainError("multiplicity queries require a vector in the positive cone");
    extend_to(height(alpha));
    auto it = mult_.find(alpha);
    return it == mult_.end() ? Int(0) : it->second;
}

Int mult_peterson(const GCM& g, const RootVector& alpha) {
    PetersonEngine engine(g);
    return engine.mult(alpha);
}

// --------------------------------------------------------------- closed form

namespace {

struct KnapsackAccumulator {
    const std::vector<WeylElement>& sums;
    Rat total = 0;

    // Depth-first over the ascending-height s-list; `denom` carries the
    // running product of n_i!, `negatives` the parity of odd counts at
    // eps = -1 entries.
    void run(std::size_t idx, RootVector rem, long long rem_height, unsigned long parts,
             Int denom, bool negative) {
        if (rem_height == 0) {
            if (parts > 0) {
                Rat term = make_frac(factorial(parts - 1), denom);
                total += negative ? -term : term;
            }
            return;
        }
        if (idx >= sums.size()) return;
        const WeylElement& s = sums[idx];
        long long sh = height(s.sw);
        if (sh > rem_height) return;  // later entries are at least this tall
        // Count 0 first, then each feasible positive count.
        run(idx + 1, rem, rem_height, parts, denom, negative);
        RootVector r = rem;
        Int fact = 1;
        for (unsigned long cnt = 1;; ++cnt) {
            bool fits = true;
            for (std::size_t j = 0; j < r.size(); ++j) {
                r[j] -= s.sw[j];
                if (r[j] < 0) {
                    fits = false;
                    break;
                }
            }
            if (!fits) break;
            fact *= static_cast<unsigned long>(cnt);
            bool neg = negative != (s.eps < 0 && cnt % 2 == 1);
            run(idx + 1, r, rem_height - sh * cnt, parts + cnt, denom * fact, neg);
        }
    }
};

}  // namespace

Int mult_berman_moody(const GCM& g, const RootVector& alpha) {
    if (!g.symmetrizable())
        throw NotSymmetrizableError("the closed-form engine requires a symmetrizable matrix");
    if (!g.indecomposable())
        throw DomainError("multiplicity engines require an indecomposable matrix");
    if (static_cast<int>(alpha.size()) != g.rank())
        throw DomainError("root vector length does not match the matrix rank");
    if (!in_positive_cone(alpha))
        throw DomainError("multiplicity queries require a vector in the positive cone");
    long long ht = height(alpha);
    std::vector<WeylElement> sums = enumerate_weyl_sums(g, ht);
    long long gc = coords_gcd(alpha);
    Rat total = 0;
    for (long long r = 1; r <= gc; ++r) {
        if (gc % r != 0) continue;
        int mu = moebius(r);
        if (mu == 0) continue;
        RootVector lambda = divided(alpha, r);
        KnapsackAccumulator acc{sums};
        acc.run(0, lambda, height(lambda), 0, 1, false);
        Rat contribution = acc.total * make_frac(make_int(mu), make_int(r));
        total += contribution;
    }
    if (!is_integral(total) || total < 0)
        throw IntegralityError("closed form produced a non-integer multiplicity at " +
                               root_to_text(alpha));
    return numerator(total);
}

Int coarse_bound(const GCM& g, const RootVector& alpha) {
    if (static_cast<int>(alpha.size()) != g.rank())
        throw DomainError("root vector length does not match the matrix rank");
    long long h = height(alpha);
    return pow_ui(make_int(g.rank()), static_cast<unsigned long>(h < 0 ? -h : h));
}

// ------------------------------------------------------------ LatticeSeries

LatticeSeries::LatticeSeries(int rank, long long bound) : rank_(rank), bound_(bound) {
    if (rank < 1 || bound < 0) throw DomainError("bad lattice series parameters");
}

LatticeSeries LatticeSeries::one(int rank, long long bound) {
    LatticeSeries s(rank, bound);
    s.terms_.emplace(RootVector(rank, 0), 1);
    return s;
}

Int LatticeSeries::coefficient(const RootVector& beta) const {
    auto it = terms_.find(beta);
    return it == terms_.end() ? Int(0) : it->second;
}

void LatticeSeries::add_term(const RootVector& beta, const Int& c) {
    if (static_cast<int>(beta.size()) != rank_) throw DomainError("term has wrong rank");
    if (std::any_of(beta.begin(), beta.end(), [](long long x) { return x < 0; }))
        throw DomainError("lattice series terms live in the positive cone");
    if (height(beta) > bound_) return;
    Int& slot = terms_[beta];
    slot += c;
    if (slot == 0) terms_.erase(beta);
}

LatticeSeries LatticeSeries::operator*(const LatticeSeries& o) const {
    LatticeSeries out(rank_, std::min(bound_, o.bound_));
    for (const auto& [a, ca] : terms_) {
        long long ha = height(a);
        for (const auto& [b, cb] : o.terms_) {
            if (ha + height(b) > out.bound_) continue;
            RootVector key(rank_);
            for (int i = 0; i < rank_; ++i) key[i] = a[i] + b[i];
            out.terms_[key] += ca * cb;
        }
    }
    std::erase_if(out.terms_, [](const auto& kv) { return kv.second == 0; });
    return out;
}

void LatticeSeries::multiply_binomial(const RootVector& beta, const Int& m) {
    long long hb = height(beta);
    if (hb < 1) throw DomainError("binomial factor needs a positive-height exponent vector");
    LatticeSeries factor(rank_, bound_);
    for (long long k = 0; k * hb <= bound_; ++k) {
        Int coeff = binomial(m, static_cast<unsigned long>(k));
        if (coeff == 0) break;  // k exceeded a nonnegative integer exponent
        if (k % 2 == 1) coeff = -coeff;
        factor.add_term(scaled(beta, k), coeff);
    }
    *this = *this * factor;
}

DenominatorReport verify_denominator_identity(const GCM& g, long long H) {
    if (H < 1) throw DomainError("height bound must be >= 1");
    PetersonEngine engine(g);
    engine.extend_to(H);
    int n = g.rank();
    LatticeSeries product = LatticeSeries::one(n, H);
    for (long long h = 1; h <= H; ++h)
        for (const RootVector& r : engine.roots_of_height(h))
            product.multiply_binomial(r, engine.table().entries.at(r));
    LatticeSeries sum = LatticeSeries::one(n, H);  // w = identity contributes 1
    for (const WeylElement& w : enumerate_weyl_sums(g, H))
        sum.add_term(w.sw, Int(w.length % 2 == 0 ? 1 : -1));
    DenominatorReport report;
    report.height_bound = H;
    report.product_terms = product.terms().size();
    report.sum_terms = sum.terms().size();
    std::vector<RootVector> keys;
    for (const auto& [v, c] : product.terms()) keys.push_back(v);
    for (const auto& [v, c] : sum.terms())
        if (!product.terms().count(v)) keys.push_back(v);
    std::sort(keys.begin(), keys.end(), sorted_by_height_lex);
    for (const auto& v : keys) {
        Int lhs = product.coefficient(v), rhs = sum.coefficient(v);
        if (lhs != rhs) report.mismatches.push_back({v, lhs, rhs});
    }
    return report;
}

}  // namespace hyperroot
