#include "legdef/rref.hpp"

#include <algorithm>
#include <numeric>

#include "legdef/errors.hpp"

namespace legdef {

namespace {

/* Dense integer row with a tracked nonzero span, so staircase-shaped
   matrices eliminate in time proportional to the span, not the width. */
struct IntRow {
    std::vector<BigInt> v;
    int lo = 0, hi = -1;  /* empty when lo > hi */

    bool empty() const { return lo > hi; }

    void refit(int from, int to) {
        lo = from;
        hi = to;
        while (lo <= hi && v[lo] == 0)
            ++lo;
        while (lo <= hi && v[hi] == 0)
            --hi;
    }
};

IntRow integerize(const std::vector<Rat>& row, int cols) {
    IntRow out;
    out.v.assign(cols, BigInt(0));
    BigInt lcm = 1;
    for (const auto& q : row) {
        if (q == 0)
            continue;
        BigInt d = q.get_den();
        BigInt g;
        mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
        lcm = lcm / g * d;
    }
    for (int j = 0; j < cols; ++j) {
        if (row[j] == 0)
            continue;
        out.v[j] = row[j].get_num() * (lcm / row[j].get_den());
    }
    out.refit(0, cols - 1);
    return out;
}

/* Divide by the gcd of the entries and make the leading entry positive. */
void normalize_content(IntRow& row) {
    if (row.empty())
        return;
    BigInt g = 0;
    for (int j = row.lo; j <= row.hi; ++j)
        if (row.v[j] != 0)
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), row.v[j].get_mpz_t());
    if (g == 0)
        return;
    if (row.v[row.lo] < 0)
        g = -g;
    if (g != 1)
        for (int j = row.lo; j <= row.hi; ++j)
            row.v[j] /= g;
}

/* row := row * (pivot[col]/g) - pivot * (row[col]/g) */
void eliminate(IntRow& row, const IntRow& pivot, int col) {
    if (row.empty() || col < row.lo || col > row.hi || row.v[col] == 0)
        return;
    BigInt g;
    mpz_gcd(g.get_mpz_t(), row.v[col].get_mpz_t(), pivot.v[col].get_mpz_t());
    BigInt row_scale = pivot.v[col] / g;
    BigInt piv_scale = row.v[col] / g;
    int lo = std::min(row.lo, pivot.lo);
    int hi = std::max(row.hi, pivot.hi);
    for (int j = lo; j <= hi; ++j) {
        bool in_row = j >= row.lo && j <= row.hi;
        bool in_piv = j >= pivot.lo && j <= pivot.hi;
        if (in_row && in_piv)
            row.v[j] = row.v[j] * row_scale - pivot.v[j] * piv_scale;
        else if (in_row)
            row.v[j] *= row_scale;
        else if (in_piv && pivot.v[j] != 0)
            row.v[j] = -pivot.v[j] * piv_scale;
    }
    row.refit(lo, hi);
    normalize_content(row);
}

RrefResult run(const std::vector<std::vector<Rat>>& matrix, int cols, bool parallel) {
    std::vector<IntRow> rows;
    rows.reserve(matrix.size());
    for (const auto& r : matrix) {
        if (static_cast<int>(r.size()) != cols)
            fail(Errc::internal_error, "rref: ragged matrix");
        IntRow ir = integerize(r, cols);
        if (!ir.empty()) {
            normalize_content(ir);
            rows.push_back(std::move(ir));
        }
    }

    const int nrows = static_cast<int>(rows.size());
    std::vector<int> pivot_row_of_col(cols, -1);
    std::vector<bool> used(nrows, false);

    for (int col = 0; col < cols; ++col) {
        int piv = -1;
        for (int i = 0; i < nrows; ++i) {
            if (!used[i] && !rows[i].empty() && rows[i].lo <= col && col <= rows[i].hi &&
                rows[i].v[col] != 0) {
                piv = i;
                break;
            }
        }
        if (piv < 0)
            continue;
        used[piv] = true;
        pivot_row_of_col[col] = piv;
        const IntRow& pivot = rows[piv];

        if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
            for (int i = 0; i < nrows; ++i) {
                if (i != piv)
                    eliminate(rows[i], pivot, col);
            }
        } else {
            for (int i = 0; i < nrows; ++i)
                if (i != piv)
                    eliminate(rows[i], pivot, col);
        }
    }

    RrefResult out;
    out.cols = cols;
    out.col_to_row.assign(cols, -1);
    for (int col = 0; col < cols; ++col) {
        int i = pivot_row_of_col[col];
        if (i < 0)
            continue;
        std::vector<Rat> qrow(cols);
        Rat lead(rows[i].v[col]);
        for (int j = rows[i].lo; j <= rows[i].hi; ++j)
            if (rows[i].v[j] != 0)
                qrow[j] = Rat(rows[i].v[j]) / lead;
        out.col_to_row[col] = static_cast<int>(out.rows.size());
        out.pivot_cols.push_back(col);
        out.rows.push_back(std::move(qrow));
    }
    out.rank = static_cast<int>(out.rows.size());
    return out;
}

}  // namespace

RrefResult rref_serial(const std::vector<std::vector<Rat>>& matrix, int cols) {
    return run(matrix, cols, false);
}

RrefResult rref(const std::vector<std::vector<Rat>>& matrix, int cols, RrefMode mode) {
    bool parallel = false;
    switch (mode) {
        case RrefMode::serial: parallel = false; break;
        case RrefMode::parallel: parallel = true; break;
        case RrefMode::automatic:
#ifdef _OPENMP
            parallel = matrix.size() >= 64 && matrix.size() * static_cast<size_t>(cols) >= 32768;
#endif
            break;
    }
    return run(matrix, cols, parallel);
}

std::vector<Rat> RrefResult::reduce(std::vector<Rat> v) const {
    if (static_cast<int>(v.size()) != cols)
        fail(Errc::internal_error, "RrefResult::reduce: wrong length");
    for (int col = 0; col < cols; ++col) {
        int i = col_to_row[col];
        if (i < 0 || v[col] == 0)
            continue;
        Rat f = v[col];
        const auto& row = rows[i];
        for (int j = col; j < cols; ++j)
            if (row[j] != 0)
                v[j] -= f * row[j];
    }
    return v;
}

bool RrefResult::in_span(const std::vector<Rat>& v) const {
    auto r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](const Rat& q) { return q == 0; });
}

bool RrefResult::unit_vector_in_span(int col) const {
    int i = col_to_row[col];
    if (i < 0)
        return false;
    const auto& row = rows[i];
    for (int j = 0; j < cols; ++j)
        if (j != col && row[j] != 0)
            return false;
    return true;
}

}  // namespace legdef
