#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "netid/linalg.hpp"

namespace netid {

/// m x d edge-flow measurements: row i is variable i, column j scenario j.
struct DataMatrix {
    std::vector<std::string> variable_labels;
    std::vector<std::string> scenario_ids;
    Matrix values;

    Index variables() const { return values.rows(); }
    Index scenarios() const { return values.cols(); }
};

/// Throws Validation on empty data, label/shape mismatches, duplicate
/// labels or non-finite values.
void validate(const DataMatrix& data);

/// Labels x1..xm and s1..sd.
DataMatrix make_data(Matrix values);

/// CSV: header row "<corner>,scenario ids...", then one row per variable
/// "label,values...".
DataMatrix parse_csv(std::istream& in);
void format_csv(std::ostream& out, const DataMatrix& data);
DataMatrix read_csv(const std::filesystem::path& path);
void write_csv(const DataMatrix& data, const std::filesystem::path& path);

/// Matrix whose columns are tagged with edge labels (constraint matrices).
struct LabelledMatrix {
    std::vector<std::string> column_labels;
    Matrix values;
};

/// CSV: header row of column labels, then numeric rows.
LabelledMatrix parse_labelled_matrix(std::istream& in);
void format_labelled_matrix(std::ostream& out, const LabelledMatrix& m);
LabelledMatrix read_labelled_matrix(const std::filesystem::path& path);
void write_labelled_matrix(const LabelledMatrix& m, const std::filesystem::path& path);

} // namespace netid
