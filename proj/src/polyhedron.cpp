#include "extremal/polyhedron.hpp"

#include "extremal/errors.hpp"

namespace extremal {

bool verify_certificate(const std::vector<Row>& rows, const EmptinessCertificate& cert) {
    if (cert.multipliers.size() != rows.size() || rows.empty()) return false;
    const std::size_t dim = rows.front().normal.size();
    Vector combo = zeros(dim);
    Scalar rhs = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Scalar& y = cert.multipliers[i];
        if (y < 0) return false;
        if (y == 0) continue;
        if (rows[i].normal.size() != dim) return false;
        for (std::size_t j = 0; j < dim; ++j) combo[j] += y * rows[i].normal[j];
        rhs += y * rows[i].rhs;
    }
    return is_zero(combo) && rhs < 0;
}

std::optional<EmptinessCertificate> farkas(const std::vector<Row>& rows, std::size_t dim) {
    const std::size_t m = rows.size();
    if (m == 0) return std::nullopt;
    LinearProgram lp(m);
    lp.nonneg.assign(m, true);
    for (std::size_t j = 0; j < dim; ++j) {
        Vector c(m);
        for (std::size_t i = 0; i < m; ++i) c[i] = rows[i].normal[j];
        lp.add(std::move(c), Rel::Eq, 0);
    }
    Vector r(m);
    for (std::size_t i = 0; i < m; ++i) r[i] = rows[i].rhs;
    lp.add(std::move(r), Rel::Eq, -1);
    // Prefer sparse multipliers.
    lp.maximize = false;
    lp.objective = Vector(m, 1);
    LpResult res = solve(lp);
    if (res.status != LpStatus::Optimal) return std::nullopt;
    return EmptinessCertificate{res.x};
}

Polyhedron::Polyhedron(std::size_t dim, std::vector<Row> rows) : dim_(dim), rows_(std::move(rows)) {
    if (dim == 0) throw DimensionError("Polyhedron: dimension must be positive");
    for (const auto& r : rows_) {
        if (r.normal.size() != dim) throw DimensionError("Polyhedron: row dimension mismatch");
    }
}

Polyhedron Polyhedron::point(const Vector& p) {
    std::vector<Row> rows;
    for (std::size_t i = 0; i < p.size(); ++i) {
        rows.push_back({unit(p.size(), i), p[i]});
        rows.push_back({neg(unit(p.size(), i)), -p[i]});
    }
    return Polyhedron(p.size(), std::move(rows));
}

Polyhedron Polyhedron::box(const Vector& lo, const Vector& hi) {
    require_same_dim(lo, hi, "Polyhedron::box");
    std::vector<Row> rows;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        rows.push_back({unit(lo.size(), i), hi[i]});
        rows.push_back({neg(unit(lo.size(), i)), -lo[i]});
    }
    return Polyhedron(lo.size(), std::move(rows));
}

bool Polyhedron::contains(const Vector& x) const {
    if (x.size() != dim_) throw DimensionError("Polyhedron::contains: dimension mismatch");
    for (const auto& r : rows_) {
        if (dot(r.normal, x) > r.rhs) return false;
    }
    return true;
}

std::vector<std::size_t> Polyhedron::active(const Vector& x) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (dot(rows_[i].normal, x) == rows_[i].rhs) out.push_back(i);
    }
    return out;
}

void Polyhedron::decide() const {
    if (cache_->done) return;
    LinearProgram lp(dim_);
    append_to(lp, 0);
    LpResult res = solve(lp);
    if (res.status == LpStatus::Infeasible) {
        cache_->empty = true;
        cache_->cert = farkas(rows_, dim_);
        if (!cache_->cert || !verify_certificate(rows_, *cache_->cert)) {
            throw SoundnessError("Polyhedron: infeasible system without a valid Farkas certificate");
        }
    } else {
        cache_->point = res.x;
    }
    cache_->done = true;
}

bool Polyhedron::empty() const {
    decide();
    return cache_->empty;
}

const std::optional<EmptinessCertificate>& Polyhedron::certificate() const {
    decide();
    return cache_->cert;
}

std::optional<Vector> Polyhedron::some_point() const {
    decide();
    return cache_->point;
}

Polyhedron Polyhedron::translate(const Vector& t) const {
    if (t.size() != dim_) throw DimensionError("Polyhedron::translate: dimension mismatch");
    std::vector<Row> rows = rows_;
    for (auto& r : rows) r.rhs += dot(r.normal, t);
    return Polyhedron(dim_, std::move(rows));
}

Polyhedron Polyhedron::intersect(const Polyhedron& o) const {
    if (o.dim_ != dim_) throw DimensionError("Polyhedron::intersect: dimension mismatch");
    std::vector<Row> rows = rows_;
    rows.insert(rows.end(), o.rows_.begin(), o.rows_.end());
    return Polyhedron(dim_, std::move(rows));
}

void Polyhedron::append_to(LinearProgram& lp, std::size_t offset) const {
    for (const auto& r : rows_) {
        Vector c = zeros(lp.nvars);
        for (std::size_t j = 0; j < dim_; ++j) c[offset + j] = r.normal[j];
        lp.add(std::move(c), Rel::Le, r.rhs);
    }
}

Region Region::exact(std::size_t dim, std::vector<Polyhedron> pieces) {
    Region r;
    r.dim_ = dim;
    for (auto& p : pieces) {
        if (p.dim() != dim) throw DimensionError("Region: piece dimension mismatch");
        if (!p.empty()) r.pieces_.push_back(std::move(p));
    }
    return r;
}

Region Region::oracle(OracleSpec spec) {
    if (spec.lo.size() != spec.hi.size() || spec.lo.empty()) throw DimensionError("Region: oracle box dimension");
    if (spec.step <= 0) throw PreconditionError("Region: oracle step must be positive");
    Region r;
    r.dim_ = spec.lo.size();
    r.oracle_ = std::make_shared<OracleSpec>(std::move(spec));
    return r;
}

bool Region::empty() const {
    if (oracle_) return grid().empty();
    return pieces_.empty();
}

bool Region::contains(const Vector& x) const {
    if (x.size() != dim_) throw DimensionError("Region::contains: dimension mismatch");
    if (oracle_) {
        for (std::size_t i = 0; i < dim_; ++i) {
            if (x[i] < oracle_->lo[i] || x[i] > oracle_->hi[i]) return false;
        }
        return oracle_->member(x);
    }
    for (const auto& p : pieces_) {
        if (p.contains(x)) return true;
    }
    return false;
}

Region Region::translate(const Vector& t) const {
    if (t.size() != dim_) throw DimensionError("Region::translate: dimension mismatch");
    if (oracle_) {
        OracleSpec s = *oracle_;
        auto base = oracle_->member;
        s.member = [base, t](const Vector& x) { return base(sub(x, t)); };
        s.lo = add(s.lo, t);
        s.hi = add(s.hi, t);
        return oracle(std::move(s));
    }
    Region r;
    r.dim_ = dim_;
    for (const auto& p : pieces_) r.pieces_.push_back(p.translate(t));
    return r;
}

std::vector<Vector> Region::grid() const {
    std::vector<Vector> out;
    if (!oracle_) return out;
    const auto& s = *oracle_;
    Vector x = s.lo;
    for (;;) {
        if (s.member(x)) out.push_back(x);
        std::size_t i = 0;
        for (; i < dim_; ++i) {
            x[i] += s.step;
            if (x[i] <= s.hi[i]) break;
            x[i] = s.lo[i];
        }
        if (i == dim_) break;
    }
    return out;
}

}  // namespace extremal
