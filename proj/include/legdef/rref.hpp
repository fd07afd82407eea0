#pragma once

#include <vector>

#include "legdef/rational.hpp"

namespace legdef {

/*
 * Reduced row-echelon form over the rationals. Rows are eliminated with
 * integer arithmetic (each row scaled to integer entries and divided by its
 * content after every step), then pivot rows are normalized to leading 1.
 * The pivot of each column is the first remaining row with a nonzero entry,
 * so the result is deterministic; the OpenMP variant updates rows in
 * parallel and produces bit-identical output.
 */
struct RrefResult {
    int cols = 0;
    int rank = 0;
    std::vector<std::vector<Rat>> rows;  /* one per pivot, sorted by pivot column */
    std::vector<int> pivot_cols;         /* pivot column of rows[i] */
    std::vector<int> col_to_row;         /* row index per column, -1 when free */

    bool is_pivot(int col) const { return col_to_row[col] >= 0; }

    /* Residual of v after subtracting the projection onto the row space. */
    std::vector<Rat> reduce(std::vector<Rat> v) const;
    bool in_span(const std::vector<Rat>& v) const;

    /* True when the unit vector e_col itself lies in the row space. */
    bool unit_vector_in_span(int col) const;
};

enum class RrefMode { automatic, serial, parallel };

RrefResult rref(const std::vector<std::vector<Rat>>& matrix, int cols,
                RrefMode mode = RrefMode::automatic);

/* Serial reference implementation, kept as the oracle for the parallel path. */
RrefResult rref_serial(const std::vector<std::vector<Rat>>& matrix, int cols);

}  // namespace legdef
