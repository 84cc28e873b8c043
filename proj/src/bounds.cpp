#include "hyperroot/bounds.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace hyperroot {

namespace {

void require_symmetric(const GCM& g) {
    if (!g.symmetric())
        throw WrongTypeError("multiplicity bounds are defined for symmetric matrices only");
}

void require_dimension(int d) {
    if (d < 3) throw DomainError("lattice dimension d must be >= 3");
}

int resolve_d(const GCM& g, int d) { return d == 0 ? g.rank() : d; }

// 1 - (alpha|alpha)/2 as a checked nonnegative integer.
long long bound_argument(const GCM& g, const RootVector& alpha) {
    BilinearForm form(g);
    long long norm = form.norm(alpha);
    if (norm % 2 != 0)
        throw OddNormError("(alpha|alpha) = " + std::to_string(norm) + " is odd");
    long long n = 1 - norm / 2;
    if (n < 0)
        throw OddNormError("1 - (alpha|alpha)/2 = " + std::to_string(n) + " is negative");
    return n;
}

}  // namespace

Int frenkel_bound(const GCM& g, const RootVector& alpha, int d) {
    require_symmetric(g);
    d = resolve_d(g, d);
    require_dimension(d);
    long long n = bound_argument(g, alpha);
    return colored_partitions(d - 2, static_cast<int>(n))[static_cast<int>(n)];
}

Int borcherds_bound(const GCM& g, const RootVector& alpha, int d) {
    require_symmetric(g);
    d = resolve_d(g, d);
    require_dimension(d);
    if (BilinearForm(g).norm(alpha) > 0)
        throw DomainError("this bound applies to (alpha|alpha) <= 0 only");
    long long n = bound_argument(g, alpha);  // >= 1 here
    PowerSeries p = colored_partitions(d - 1, static_cast<int>(n));
    return p[static_cast<int>(n)] - p[static_cast<int>(n - 1)];
}

Int niemann_bound(const GCM& g, const RootVector& alpha) {
    if (g.a != preset("F").a)
        throw WrongAlgebraError("this bound is specific to the rank-3 'F' preset");
    long long n = bound_argument(g, alpha);
    return p_sigma_series(static_cast<int>(n))[static_cast<int>(n)];
}

bool niemann_second_branch_possible(long long norm) { return norm % 46 == 0; }

BoundReport check_frenkel(const GCM& g, long long H, int d) {
    PetersonEngine engine(g);
    return check_frenkel(engine, H, d);
}

BoundReport check_frenkel(PetersonEngine& engine, long long H, int d) {
    const GCM& g = engine.gcm();
    require_symmetric(g);
    d = resolve_d(g, d);
    require_dimension(d);
    if (H < 1) throw DomainError("height bound must be >= 1");
    engine.extend_to(H);
    BilinearForm form(g);
    bool is_f = (g.a == preset("F").a);

    // One pass to find the largest bound argument, then shared series.
    std::vector<std::pair<RootVector, long long>> imaginaries;  // (root, norm)
    long long max_arg = 0;
    for (long long h = 1; h <= H; ++h)
        for (const RootVector& r : engine.roots_of_height(h)) {
            long long norm = form.norm(r);
            if (norm > 0) continue;  // real roots: the bounds target imaginary ones
            imaginaries.emplace_back(r, norm);
            max_arg = std::max(max_arg, 1 - norm / 2);
        }
    int ord = static_cast<int>(max_arg);
    PowerSeries pf = colored_partitions(d - 2, ord);
    PowerSeries pb = colored_partitions(d - 1, ord);
    PowerSeries ps = is_f ? p_sigma_series(ord) : PowerSeries(0);

    BoundReport report;
    report.gcm_id = g.content_hash();
    report.d = d;
    report.height_bound = H;
    for (const auto& [r, norm] : imaginaries) {
        if (norm % 2 != 0)
            throw OddNormError("(alpha|alpha) = " + std::to_string(norm) + " is odd");
        int n = static_cast<int>(1 - norm / 2);
        BoundRow row;
        row.alpha = r;
        row.norm = norm;
        row.mult = engine.mult(r);
        row.frenkel = pf[n];
        row.borcherds = pb[n] - pb[n - 1];
        if (is_f) {
            row.niemann = ps[n];
            row.second_branch_possible = niemann_second_branch_possible(norm);
        }
        row.saturated = (row.mult == row.frenkel);
        row.violated = (row.mult > row.frenkel);
        if (row.saturated) ++report.saturations;
        if (row.violated) ++report.violations;
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string BoundReport::to_json() const {
    nlohmann::ordered_json j;
    j["gcm_hash"] = gcm_id;
    j["d"] = d;
    j["height_bound"] = height_bound;
    nlohmann::ordered_json rows_json = nlohmann::ordered_json::array();
    for (const BoundRow& row : rows) {
        nlohmann::ordered_json r;
        r["alpha"] = row.alpha;
        r["norm"] = row.norm;
        r["mult"] = row.mult.get_str();
        r["frenkel"] = row.frenkel.get_str();
        r["borcherds"] = row.borcherds.get_str();
        if (row.niemann)
            r["niemann"] = row.niemann->get_str();
        else
            r["niemann"] = nullptr;
        r["second_branch_possible"] = row.second_branch_possible;
        r["saturated"] = row.saturated;
        r["violated"] = row.violated;
        rows_json.push_back(std::move(r));
    }
    j["rows"] = std::move(rows_json);
    j["violations"] = violations;
    j["saturations"] = saturations;
    return j.dump();
}

std::string BoundReport::to_csv() const {
    std::ostringstream out;
    out << "alpha,norm,mult,frenkel,borcherds,niemann,saturated,violated\n";
    for (const BoundRow& row : rows) {
        out << '"' << root_to_text(row.alpha) << '"' << ',' << row.norm << ','
            << row.mult.get_str() << ',' << row.frenkel.get_str() << ','
            << row.borcherds.get_str() << ',' << (row.niemann ? row.niemann->get_str() : "")
            << ',' << (row.saturated ? "true" : "false") << ','
            << (row.violated ? "true" : "false") << '\n';
    }
    return out.str();
}

}  // namespace hyperroot
