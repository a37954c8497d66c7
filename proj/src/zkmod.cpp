#include "homolift/zkmod.hpp"

#include "homolift/error.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <utility>

namespace homolift {

namespace {

using Row = std::vector<Integer>;
using Rows = std::vector<Row>;

void require_same(const Modulus& a, const Modulus& b, const char* op) {
    if (!(a == b))
        throw Error(ErrorKind::modulus_mismatch, std::string(op) + ": modulus " + std::to_string(a.value()) +
                                                     " vs " + std::to_string(b.value()));
}

void require_rank(std::size_t a, std::size_t b, const char* op) {
    if (a != b)
        throw Error(ErrorKind::rank_mismatch,
                    std::string(op) + ": rank " + std::to_string(a) + " vs " + std::to_string(b));
}

bool row_is_zero(const Row& r) {
    return std::all_of(r.begin(), r.end(), [](const Integer& x) { return x == 0; });
}

// Canonical row-span basis. k >= 2: Howell form (xgcd elimination, unit-normalised
// pivots dividing k, annihilator rows). k == 0: Hermite form with positive pivots.
Rows normal_form(Rows a, std::size_t ncols, std::int64_t k) {
    const bool modular = k != 0;
    const Integer kk = k;
    auto reduce = [&](Row& r, std::size_t from) {
        if (!modular) return;
        for (std::size_t j = from; j < ncols; ++j) r[j] = floor_mod(r[j], kk);
    };
    for (auto& r : a) reduce(r, 0);

    std::size_t p = 0;
    for (std::size_t c = 0; c < ncols && p < a.size(); ++c) {
        std::size_t i = p;
        while (i < a.size() && a[i][c] == 0) ++i;
        if (i == a.size()) continue;
        std::swap(a[p], a[i]);
        for (i = p + 1; i < a.size(); ++i) {
            if (a[i][c] == 0) continue;
            Xgcd e = xgcd(a[p][c], a[i][c]);
            Integer u = -(a[i][c] / e.g);
            Integer v = a[p][c] / e.g;
            for (std::size_t j = c; j < ncols; ++j) {
                Integer x = a[p][j], y = a[i][j];
                a[p][j] = e.s * x + e.t * y;
                a[i][j] = u * x + v * y;
            }
            reduce(a[p], c);
            reduce(a[i], c);
        }
        if (modular) {
            Integer unit = normalizing_unit(a[p][c], kk);
            if (unit != 1) {
                for (std::size_t j = c; j < ncols; ++j) a[p][j] *= unit;
                reduce(a[p], c);
            }
        } else if (a[p][c] < 0) {
            for (std::size_t j = c; j < ncols; ++j) a[p][j] = -a[p][j];
        }
        const Integer pivot = a[p][c];
        for (i = 0; i < p; ++i) {
            Integer q = floor_div(a[i][c], pivot);
            if (q == 0) continue;
            for (std::size_t j = c; j < ncols; ++j) a[i][j] -= q * a[p][j];
            reduce(a[i], c);
        }
        if (modular && pivot != 1) {
            Row ann = a[p];
            Integer factor = kk / pivot;
            for (std::size_t j = c; j < ncols; ++j) ann[j] *= factor;
            reduce(ann, c);
            if (!row_is_zero(ann)) a.push_back(std::move(ann));
        }
        ++p;
    }
    a.resize(p);
    return a;
}

// Express each row of `target` as an integer combination of the echelon rows `basis`.
Rows coordinates_in(const Rows& basis, const Rows& target, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    for (const auto& r : basis) {
        std::size_t c = 0;
        while (c < ncols && r[c] == 0) ++c;
        pivots.push_back(c);
    }
    Rows out;
    for (Row t : target) {
        Row x(basis.size(), 0);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            std::size_t c = pivots[i];
            if (t[c] == 0) continue;
            if (t[c] % basis[i][c] != 0) throw Error(ErrorKind::internal, "coordinates_in: not in span");
            Integer q = t[c] / basis[i][c];
            x[i] = q;
            for (std::size_t j = c; j < ncols; ++j) t[j] -= q * basis[i][j];
        }
        if (!row_is_zero(t)) throw Error(ErrorKind::internal, "coordinates_in: not in span");
        out.push_back(std::move(x));
    }
    return out;
}

// Lattice generated by s together with k*Z^n, as a full-rank Hermite basis (k >= 2),
// or the Hermite basis of s itself (k == 0).
Rows integer_lattice(const SubgroupBasis& s) {
    const std::size_t n = s.rank();
    const std::int64_t k = s.modulus().value();
    Rows rows;
    for (const auto& r : s.rows()) rows.push_back(r.coords());
    if (k != 0) {
        for (std::size_t i = 0; i < n; ++i) {
            Row e(n, 0);
            e[i] = k;
            rows.push_back(std::move(e));
        }
    }
    return normal_form(std::move(rows), n, 0);
}

std::vector<Integer> invariants_from_diagonal(const std::vector<Integer>& diag, std::size_t free_extra) {
    std::vector<Integer> out;
    for (const auto& d : diag)
        if (d != 1) out.push_back(d);
    for (std::size_t i = 0; i < free_extra; ++i) out.push_back(0);
    // zeros sort last; diagonal is already in divisibility order
    std::stable_partition(out.begin(), out.end(), [](const Integer& x) { return x != 0; });
    return out;
}

}  // namespace

// ---------------------------------------------------------------- Modulus

Modulus::Modulus(std::int64_t k) : k_(k) {
    if (k == 1 || k < 0) throw Error(ErrorKind::invalid_params, "modulus must be 0 or >= 2, got " + std::to_string(k));
}

Integer Modulus::reduce(const Integer& a) const { return k_ == 0 ? a : floor_mod(a, Integer(k_)); }

// ---------------------------------------------------------------- ModuleVector

ModuleVector::ModuleVector(Modulus modulus, std::vector<Integer> coords)
    : modulus_(modulus), coords_(std::move(coords)) {
    for (auto& c : coords_) c = modulus_.reduce(c);
}

ModuleVector::ModuleVector(Modulus modulus, const std::vector<std::int64_t>& coords) : modulus_(modulus) {
    coords_.reserve(coords.size());
    for (auto c : coords) coords_.push_back(modulus_.reduce(Integer(c)));
}

ModuleVector ModuleVector::zero(Modulus modulus, std::size_t n) {
    return ModuleVector(modulus, std::vector<Integer>(n, 0));
}

ModuleVector ModuleVector::unit(Modulus modulus, std::size_t n, std::size_t i) {
    std::vector<Integer> c(n, 0);
    c.at(i) = 1;
    return ModuleVector(modulus, std::move(c));
}

bool ModuleVector::is_zero() const { return row_is_zero(coords_); }

ModuleVector ModuleVector::operator+(const ModuleVector& o) const {
    require_same(modulus_, o.modulus_, "vector add");
    if (size() != o.size()) throw Error(ErrorKind::dimension_mismatch, "vector add: length mismatch");
    std::vector<Integer> c(size());
    for (std::size_t i = 0; i < size(); ++i) c[i] = coords_[i] + o.coords_[i];
    return ModuleVector(modulus_, std::move(c));
}

ModuleVector ModuleVector::operator-(const ModuleVector& o) const { return *this + (-o); }

ModuleVector ModuleVector::operator-() const { return scaled(-1); }

ModuleVector ModuleVector::scaled(const Integer& f) const {
    std::vector<Integer> c(size());
    for (std::size_t i = 0; i < size(); ++i) c[i] = coords_[i] * f;
    return ModuleVector(modulus_, std::move(c));
}

bool ModuleVector::operator==(const ModuleVector& o) const {
    return modulus_ == o.modulus_ && coords_ == o.coords_;
}

std::strong_ordering ModuleVector::operator<=>(const ModuleVector& o) const {
    if (auto c = modulus_.value() <=> o.modulus_.value(); c != 0) return c;
    if (auto c = size() <=> o.size(); c != 0) return c;
    for (std::size_t i = 0; i < size(); ++i) {
        if (coords_[i] < o.coords_[i]) return std::strong_ordering::less;
        if (coords_[i] > o.coords_[i]) return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

std::string ModuleVector::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < size(); ++i) {
        if (i) s += ',';
        s += coords_[i].str();
    }
    return s + ")";
}

// ---------------------------------------------------------------- MatrixZk

MatrixZk::MatrixZk(Modulus modulus, std::size_t rows, std::size_t cols)
    : modulus_(modulus), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

MatrixZk::MatrixZk(Modulus modulus, std::size_t cols, const std::vector<std::vector<Integer>>& rows)
    : MatrixZk(modulus, rows.size(), cols) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw Error(ErrorKind::dimension_mismatch, "matrix row length mismatch");
        for (std::size_t j = 0; j < cols; ++j) data_[i * cols + j] = modulus_.reduce(rows[i][j]);
    }
}

MatrixZk::MatrixZk(Modulus modulus, std::size_t cols, const std::vector<std::vector<std::int64_t>>& rows)
    : MatrixZk(modulus, rows.size(), cols) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw Error(ErrorKind::dimension_mismatch, "matrix row length mismatch");
        for (std::size_t j = 0; j < cols; ++j) data_[i * cols + j] = modulus_.reduce(Integer(rows[i][j]));
    }
}

MatrixZk MatrixZk::identity(Modulus modulus, std::size_t n) {
    MatrixZk m(modulus, n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
    return m;
}

MatrixZk MatrixZk::from_rows(Modulus modulus, std::size_t cols, const std::vector<ModuleVector>& rows) {
    MatrixZk m(modulus, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        require_same(modulus, rows[i].modulus(), "from_rows");
        if (rows[i].size() != cols) throw Error(ErrorKind::dimension_mismatch, "from_rows: row length mismatch");
        for (std::size_t j = 0; j < cols; ++j) m.data_[i * cols + j] = rows[i][j];
    }
    return m;
}

void MatrixZk::set(std::size_t i, std::size_t j, const Integer& v) { data_.at(i * cols_ + j) = modulus_.reduce(v); }

ModuleVector MatrixZk::row(std::size_t i) const {
    return ModuleVector(modulus_, std::vector<Integer>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_));
}

ModuleVector MatrixZk::column(std::size_t j) const {
    std::vector<Integer> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
    return ModuleVector(modulus_, std::move(c));
}

std::vector<std::vector<Integer>> MatrixZk::row_data() const {
    std::vector<std::vector<Integer>> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i].assign(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    return out;
}

MatrixZk MatrixZk::operator*(const MatrixZk& o) const {
    require_same(modulus_, o.modulus_, "matrix multiply");
    if (cols_ != o.rows_) throw Error(ErrorKind::dimension_mismatch, "matrix multiply: inner dimension mismatch");
    MatrixZk r(modulus_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t t = 0; t < cols_; ++t) {
            const Integer& a = at(i, t);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r.data_[i * o.cols_ + j] += a * o.at(t, j);
        }
    for (auto& x : r.data_) x = modulus_.reduce(x);
    return r;
}

ModuleVector MatrixZk::operator*(const ModuleVector& v) const {
    require_same(modulus_, v.modulus(), "matrix-vector multiply");
    if (cols_ != v.size()) throw Error(ErrorKind::dimension_mismatch, "matrix-vector multiply: dimension mismatch");
    std::vector<Integer> out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (v[j] != 0) out[i] += at(i, j) * v[j];
    return ModuleVector(modulus_, std::move(out));
}

MatrixZk MatrixZk::operator+(const MatrixZk& o) const {
    require_same(modulus_, o.modulus_, "matrix add");
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorKind::dimension_mismatch, "matrix add: shape mismatch");
    MatrixZk r(modulus_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = modulus_.reduce(data_[i] + o.data_[i]);
    return r;
}

MatrixZk MatrixZk::operator-(const MatrixZk& o) const {
    require_same(modulus_, o.modulus_, "matrix subtract");
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw Error(ErrorKind::dimension_mismatch, "matrix subtract: shape mismatch");
    MatrixZk r(modulus_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = modulus_.reduce(data_[i] - o.data_[i]);
    return r;
}

bool MatrixZk::operator==(const MatrixZk& o) const {
    return modulus_ == o.modulus_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

MatrixZk MatrixZk::transpose() const {
    MatrixZk r(modulus_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.data_[j * rows_ + i] = at(i, j);
    return r;
}

MatrixZk MatrixZk::power(std::uint64_t e) const {
    if (rows_ != cols_) throw Error(ErrorKind::dimension_mismatch, "power of non-square matrix");
    MatrixZk result = identity(modulus_, rows_);
    MatrixZk base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

std::optional<MatrixZk> MatrixZk::inverse() const {
    if (rows_ != cols_) return std::nullopt;
    const std::size_t n = rows_;
    // Rows of [A^T | I] span {(x A^T, x)}; a unit left block exposes (A^T)^{-1}.
    Rows aug(n, Row(2 * n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = at(j, i);
        aug[i][n + i] = 1;
    }
    Rows h = normal_form(std::move(aug), 2 * n, modulus_.value());
    if (h.size() != n) return std::nullopt;
    MatrixZk inv_t(modulus_, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (h[i][j] != (i == j ? 1 : 0)) return std::nullopt;
            inv_t.data_[i * n + j] = h[i][n + j];
        }
    return inv_t.transpose();
}

bool MatrixZk::is_identity() const { return rows_ == cols_ && *this == identity(modulus_, rows_); }

std::string MatrixZk::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) s += ' ';
            s += at(i, j).str();
        }
        s += '\n';
    }
    return s;
}

// ---------------------------------------------------------------- SubgroupBasis

SubgroupBasis::SubgroupBasis(Modulus modulus, std::size_t rank) : modulus_(modulus), rank_(rank) {}

SubgroupBasis SubgroupBasis::span(Modulus modulus, std::size_t rank, const std::vector<ModuleVector>& gens) {
    return howell_form(MatrixZk::from_rows(modulus, rank, gens));
}

SubgroupBasis SubgroupBasis::full(Modulus modulus, std::size_t rank) {
    return howell_form(MatrixZk::identity(modulus, rank));
}

MatrixZk SubgroupBasis::matrix() const { return MatrixZk::from_rows(modulus_, rank_, rows_); }

bool SubgroupBasis::operator==(const SubgroupBasis& o) const {
    return modulus_ == o.modulus_ && rank_ == o.rank_ && rows_ == o.rows_;
}

std::strong_ordering SubgroupBasis::operator<=>(const SubgroupBasis& o) const {
    if (auto c = modulus_.value() <=> o.modulus_.value(); c != 0) return c;
    if (auto c = rank_ <=> o.rank_; c != 0) return c;
    return std::lexicographical_compare_three_way(rows_.begin(), rows_.end(), o.rows_.begin(), o.rows_.end());
}

std::string SubgroupBasis::to_string() const {
    std::string s = "<";
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (i) s += ',';
        s += rows_[i].to_string();
    }
    return s + ">";
}

SubgroupBasis howell_form(const MatrixZk& m) {
    SubgroupBasis s(m.modulus(), m.cols());
    for (auto& r : normal_form(m.row_data(), m.cols(), m.modulus().value()))
        s.rows_.emplace_back(m.modulus(), std::move(r));
    return s;
}

// ---------------------------------------------------------------- solving

namespace {

// Normal form of [a^T | I]; rows with zero left block span ker(a).
Rows transpose_augmented(const MatrixZk& a) {
    const std::size_t m = a.rows(), n = a.cols();
    Rows aug(n, Row(m + n, 0));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) aug[j][i] = a.at(i, j);
        aug[j][m + j] = 1;
    }
    return normal_form(std::move(aug), m + n, a.modulus().value());
}

SubgroupBasis kernel_from(const Rows& h, std::size_t m, std::size_t n, Modulus modulus) {
    std::vector<ModuleVector> gens;
    for (const auto& r : h) {
        bool left_zero = std::all_of(r.begin(), r.begin() + m, [](const Integer& x) { return x == 0; });
        if (left_zero) gens.emplace_back(modulus, Row(r.begin() + m, r.end()));
    }
    return SubgroupBasis::span(modulus, n, gens);
}

}  // namespace

SubgroupBasis kernel(const MatrixZk& a) {
    return kernel_from(transpose_augmented(a), a.rows(), a.cols(), a.modulus());
}

std::optional<SolutionSet> solve_linear(const MatrixZk& a, const ModuleVector& b) {
    require_same(a.modulus(), b.modulus(), "solve_linear");
    if (b.size() != a.rows()) throw Error(ErrorKind::dimension_mismatch, "solve_linear: rhs length mismatch");
    const std::size_t m = a.rows(), n = a.cols();
    const Modulus mod = a.modulus();
    Rows h = transpose_augmented(a);

    // Reduce (b, 0) against the echelon rows until the left block vanishes.
    Row t(m + n, 0);
    for (std::size_t i = 0; i < m; ++i) t[i] = b[i];
    for (const auto& r : h) {
        std::size_t c = 0;
        while (r[c] == 0) ++c;
        if (c >= m) break;
        for (std::size_t j = 0; j < c; ++j)
            if (t[j] != 0) return std::nullopt;
        if (t[c] == 0) continue;
        if (t[c] % r[c] != 0) return std::nullopt;
        Integer q = t[c] / r[c];
        for (std::size_t j = c; j < m + n; ++j) {
            t[j] = mod.reduce(t[j] - q * r[j]);
        }
    }
    for (std::size_t j = 0; j < m; ++j)
        if (mod.reduce(t[j]) != 0) return std::nullopt;
    Row x(t.begin() + m, t.end());
    for (auto& v : x) v = -v;
    return SolutionSet{ModuleVector(mod, std::move(x)), kernel_from(h, m, n, mod)};
}

// ---------------------------------------------------------------- lattice operations

SubgroupBasis subgroup_sum(const SubgroupBasis& s1, const SubgroupBasis& s2) {
    require_same(s1.modulus(), s2.modulus(), "subgroup_sum");
    require_rank(s1.rank(), s2.rank(), "subgroup_sum");
    std::vector<ModuleVector> rows = s1.rows();
    rows.insert(rows.end(), s2.rows().begin(), s2.rows().end());
    return SubgroupBasis::span(s1.modulus(), s1.rank(), rows);
}

SubgroupBasis subgroup_intersect(const SubgroupBasis& s1, const SubgroupBasis& s2) {
    require_same(s1.modulus(), s2.modulus(), "subgroup_intersect");
    require_rank(s1.rank(), s2.rank(), "subgroup_intersect");
    const std::size_t n = s1.rank();
    // Zassenhaus: rows (x, x) for x in s1 and (y, 0) for y in s2; the rows whose left
    // half cancels carry s1 ∩ s2 in their right half.
    Rows z;
    for (const auto& r : s1.rows()) {
        Row row(r.coords());
        row.insert(row.end(), r.coords().begin(), r.coords().end());
        z.push_back(std::move(row));
    }
    for (const auto& r : s2.rows()) {
        Row row(r.coords());
        row.resize(2 * n, 0);
        z.push_back(std::move(row));
    }
    Rows h = normal_form(std::move(z), 2 * n, s1.modulus().value());
    std::vector<ModuleVector> gens;
    for (const auto& r : h) {
        bool left_zero = std::all_of(r.begin(), r.begin() + n, [](const Integer& x) { return x == 0; });
        if (left_zero) gens.emplace_back(s1.modulus(), Row(r.begin() + n, r.end()));
    }
    return SubgroupBasis::span(s1.modulus(), n, gens);
}

ModuleVector reduce_mod(const SubgroupBasis& s, const ModuleVector& v) {
    require_same(s.modulus(), v.modulus(), "reduce_mod");
    require_rank(s.rank(), v.size(), "reduce_mod");
    const Modulus mod = s.modulus();
    Row t = v.coords();
    for (const auto& r : s.rows()) {
        std::size_t c = 0;
        while (r[c] == 0) ++c;
        Integer q = floor_div(t[c], r[c]);
        if (q == 0) continue;
        for (std::size_t j = c; j < t.size(); ++j) t[j] = mod.reduce(t[j] - q * r[j]);
    }
    return ModuleVector(mod, std::move(t));
}

bool contains(const SubgroupBasis& s, const ModuleVector& v) {
    require_same(s.modulus(), v.modulus(), "contains");
    require_rank(s.rank(), v.size(), "contains");
    const Modulus mod = s.modulus();
    Row t = v.coords();
    std::size_t next = 0;  // first column not yet cleared
    for (const auto& r : s.rows()) {
        std::size_t c = 0;
        while (r[c] == 0) ++c;
        for (std::size_t j = next; j < c; ++j)
            if (t[j] != 0) return false;
        next = c + 1;
        if (t[c] == 0) continue;
        if (t[c] % r[c] != 0) return false;
        Integer q = t[c] / r[c];
        for (std::size_t j = c; j < t.size(); ++j) t[j] = mod.reduce(t[j] - q * r[j]);
    }
    return row_is_zero(t);
}

bool contains(const SubgroupBasis& outer, const SubgroupBasis& inner) {
    require_same(outer.modulus(), inner.modulus(), "contains");
    require_rank(outer.rank(), inner.rank(), "contains");
    return std::all_of(inner.rows().begin(), inner.rows().end(),
                       [&](const ModuleVector& r) { return contains(outer, r); });
}

SubgroupBasis image(const MatrixZk& a, const SubgroupBasis& s) {
    require_same(a.modulus(), s.modulus(), "image");
    if (a.cols() != s.rank()) throw Error(ErrorKind::dimension_mismatch, "image: matrix/rank mismatch");
    std::vector<ModuleVector> gens;
    for (const auto& r : s.rows()) gens.push_back(a * r);
    return SubgroupBasis::span(s.modulus(), a.rows(), gens);
}

Integer subgroup_order(const SubgroupBasis& s) {
    if (s.modulus().is_integral()) {
        if (s.is_trivial()) return 1;
        throw Error(ErrorKind::invalid_params, "subgroup_order: infinite subgroup over Z");
    }
    const Integer k = s.modulus().value();
    Integer order = 1;
    for (const auto& r : s.rows()) {
        std::size_t c = 0;
        while (r[c] == 0) ++c;
        order *= k / r[c];
    }
    return order;
}

std::vector<Integer> quotient_invariants(const SubgroupBasis& s) {
    SmithForm f = smith_form(integer_lattice(s), s.rank());
    std::vector<Integer> diag;
    for (const auto& d : f.diagonal)
        if (d != 0) diag.push_back(d);
    return invariants_from_diagonal(diag, s.rank() - diag.size());
}

std::vector<Integer> relative_invariants(const SubgroupBasis& outer, const SubgroupBasis& inner) {
    require_same(outer.modulus(), inner.modulus(), "relative_invariants");
    require_rank(outer.rank(), inner.rank(), "relative_invariants");
    if (!contains(outer, inner))
        throw Error(ErrorKind::invalid_params, "relative_invariants: inner subgroup not contained in outer");
    const std::size_t n = outer.rank();
    Rows b1 = integer_lattice(outer);
    Rows b2 = integer_lattice(inner);
    Rows x = coordinates_in(b1, b2, n);
    if (b1.empty()) return {};
    SmithForm f = smith_form(x, b1.size());
    std::size_t rank_x = 0;
    for (const auto& d : f.diagonal)
        if (d != 0) ++rank_x;
    std::vector<Integer> diag;
    for (const auto& d : f.diagonal)
        if (d != 0) diag.push_back(d);
    return invariants_from_diagonal(diag, b1.size() - rank_x);
}

std::string format_invariants(const std::vector<Integer>& inv) {
    std::string s = "[";
    for (std::size_t i = 0; i < inv.size(); ++i) {
        if (i) s += ',';
        s += inv[i].str();
    }
    return s + "]";
}

// ---------------------------------------------------------------- Smith form

SmithForm smith_form(const std::vector<std::vector<Integer>>& input, std::size_t cols) {
    Rows d = input;
    const std::size_t m = d.size(), n = cols;
    Rows v(n, Row(n, 0)), vi(n, Row(n, 0));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = vi[i][i] = 1;

    // 2x2 unimodular step clearing y against pivot x: returns (a, b, c, d) with
    // a*x + b*y = g and c*x + d*y = 0. Plain subtraction when x divides y, so that
    // an already-minimal pivot is never swapped out.
    auto clearing = [](const Integer& x, const Integer& y) {
        if (y % x == 0) return std::array<Integer, 4>{1, 0, -(y / x), 1};
        Xgcd e = xgcd(x, y);
        return std::array<Integer, 4>{e.s, e.t, -(y / e.g), x / e.g};
    };
    auto column_op = [&](std::size_t t, std::size_t j) {
        auto [a, b, c, dd] = clearing(d[t][t], d[t][j]);
        for (auto& row : d) {
            Integer p = row[t], q = row[j];
            row[t] = a * p + b * q;
            row[j] = c * p + dd * q;
        }
        for (auto& row : v) {
            Integer p = row[t], q = row[j];
            row[t] = a * p + b * q;
            row[j] = c * p + dd * q;
        }
        // the inverse step acts on rows t, j of V^{-1}
        for (std::size_t col = 0; col < n; ++col) {
            Integer p = vi[t][col], q = vi[j][col];
            vi[t][col] = dd * p - c * q;
            vi[j][col] = -b * p + a * q;
        }
    };
    auto row_op = [&](std::size_t t, std::size_t i) {
        auto [a, b, c, dd] = clearing(d[t][t], d[i][t]);
        for (std::size_t col = 0; col < n; ++col) {
            Integer p = d[t][col], q = d[i][col];
            d[t][col] = a * p + b * q;
            d[i][col] = c * p + dd * q;
        }
    };
    auto swap_cols = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (auto& row : d) std::swap(row[a], row[b]);
        for (auto& row : v) std::swap(row[a], row[b]);
        std::swap(vi[a], vi[b]);
    };

    const std::size_t steps = std::min(m, n);
    SmithForm out;
    for (std::size_t t = 0; t < steps; ++t) {
        // smallest nonzero entry in the trailing block
        std::size_t bi = m, bj = n;
        Integer best = 0;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j) {
                if (d[i][j] == 0) continue;
                Integer a = abs(d[i][j]);
                if (bi == m || a < best) {
                    best = a;
                    bi = i;
                    bj = j;
                }
            }
        if (bi == m) {
            for (std::size_t r = t; r < steps; ++r) out.diagonal.push_back(0);
            break;
        }
        std::swap(d[t], d[bi]);
        swap_cols(t, bj);
        for (;;) {
            for (std::size_t i = t + 1; i < m; ++i)
                if (d[i][t] != 0) row_op(t, i);
            bool dirty = false;
            for (std::size_t j = t + 1; j < n; ++j)
                if (d[t][j] != 0) {
                    column_op(t, j);
                    dirty = true;
                }
            if (dirty) {
                bool col_clean = true;
                for (std::size_t i = t + 1; i < m; ++i)
                    if (d[i][t] != 0) col_clean = false;
                if (!col_clean) continue;
            }
            // divisibility of the trailing block by the pivot
            bool fixed = false;
            for (std::size_t i = t + 1; i < m && !fixed; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (d[i][j] % d[t][t] != 0) {
                        for (std::size_t c = 0; c < n; ++c) d[t][c] += d[i][c];
                        fixed = true;
                        break;
                    }
            if (!fixed) break;
        }
        if (d[t][t] < 0)
            for (std::size_t c = 0; c < n; ++c) d[t][c] = -d[t][c];
        out.diagonal.push_back(d[t][t]);
    }
    out.v = std::move(v);
    out.v_inverse = std::move(vi);
    return out;
}

// ---------------------------------------------------------------- QuotientModule

QuotientModule::QuotientModule(const SubgroupBasis& s) : modulus_(s.modulus()), rank_(s.rank()) {
    const std::size_t n = rank_;
    SmithForm f = smith_form(integer_lattice(s), n);
    std::vector<Integer> diag = f.diagonal;
    diag.resize(n, 0);  // missing pivots are free coordinates (only possible over Z)
    // x in lattice  <=>  (x V)_i divisible by d_i; so q = V^T x and x = V^{-T} q.
    for (std::size_t i = 0; i < n; ++i) {
        if (diag[i] == 1) continue;
        moduli_.push_back(diag[i]);
        Row p(n);
        for (std::size_t j = 0; j < n; ++j) p[j] = modulus_.reduce(f.v[j][i]);
        projection_.push_back(std::move(p));
        lifts_.emplace_back(modulus_, f.v_inverse[i]);
    }
}

Integer QuotientModule::order() const {
    Integer o = 1;
    for (const auto& d : moduli_) {
        if (d == 0) throw Error(ErrorKind::invalid_params, "quotient module is infinite");
        o *= d;
    }
    return o;
}

std::vector<Integer> QuotientModule::project(const ModuleVector& v) const {
    require_same(modulus_, v.modulus(), "project");
    require_rank(rank_, v.size(), "project");
    std::vector<Integer> q(moduli_.size(), 0);
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        for (std::size_t j = 0; j < rank_; ++j) q[i] += projection_[i][j] * v[j];
        if (moduli_[i] != 0) q[i] = floor_mod(q[i], moduli_[i]);
    }
    return q;
}

ModuleVector QuotientModule::lift(const std::vector<Integer>& q) const {
    if (q.size() != moduli_.size()) throw Error(ErrorKind::dimension_mismatch, "lift: coordinate count mismatch");
    ModuleVector v = ModuleVector::zero(modulus_, rank_);
    for (std::size_t i = 0; i < q.size(); ++i)
        if (q[i] != 0) v = v + lifts_[i].scaled(q[i]);
    return v;
}

std::vector<std::vector<Integer>> QuotientModule::induced(const MatrixZk& a) const {
    require_same(modulus_, a.modulus(), "induced");
    if (a.rows() != rank_ || a.cols() != rank_) throw Error(ErrorKind::dimension_mismatch, "induced: shape mismatch");
    const std::size_t r = moduli_.size();
    std::vector<std::vector<Integer>> out(r, std::vector<Integer>(r, 0));
    for (std::size_t c = 0; c < r; ++c) {
        std::vector<Integer> col = project(a * lifts_[c]);
        for (std::size_t i = 0; i < r; ++i) out[i][c] = col[i];
    }
    return out;
}

}  // namespace homolift
