#include "netid/data.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

#include "netid/error.hpp"

namespace netid {

void validate(const DataMatrix& data)
{
    if (data.values.rows() < 1 || data.values.cols() < 1)
        throw Error(ErrorKind::Validation, "data matrix must have at least one variable and scenario");
    if (static_cast<Index>(data.variable_labels.size()) != data.values.rows() ||
        static_cast<Index>(data.scenario_ids.size()) != data.values.cols())
        throw Error(ErrorKind::Validation, "data labels do not match the value shape");
    std::set<std::string> seen(data.variable_labels.begin(), data.variable_labels.end());
    if (seen.size() != data.variable_labels.size())
        throw Error(ErrorKind::Validation, "duplicate variable labels");
    seen = std::set<std::string>(data.scenario_ids.begin(), data.scenario_ids.end());
    if (seen.size() != data.scenario_ids.size())
        throw Error(ErrorKind::Validation, "duplicate scenario ids");
    if (!data.values.allFinite())
        throw Error(ErrorKind::Validation, "data contains NaN or Inf");
}

DataMatrix make_data(Matrix values)
{
    DataMatrix data;
    for (Index i = 0; i < values.rows(); ++i)
        data.variable_labels.push_back("x" + std::to_string(i + 1));
    for (Index j = 0; j < values.cols(); ++j)
        data.scenario_ids.push_back("s" + std::to_string(j + 1));
    data.values = std::move(values);
    return data;
}

namespace {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ','))
        cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',')
        cells.emplace_back();
    return cells;
}

double parse_number(const std::string& cell, std::size_t line)
{
    if (cell.empty())
        throw ParseError(line, "empty numeric cell");
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size())
        throw ParseError(line, "not a number: '" + cell + "'");
    if (!std::isfinite(v) || (errno == ERANGE && std::abs(v) == HUGE_VAL))
        throw ParseError(line, "non-finite value: '" + cell + "'");
    return v;
}

/// Non-blank lines with their 1-based numbers.
std::vector<std::pair<std::size_t, std::string>> content_lines(std::istream& in)
{
    std::vector<std::pair<std::size_t, std::string>> lines;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (!trim(line).empty())
            lines.emplace_back(number, line);
    }
    return lines;
}

void write_number(std::ostream& out, double v)
{
    out << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
}

} // namespace

DataMatrix parse_csv(std::istream& in)
{
    const auto lines = content_lines(in);
    if (lines.empty())
        throw ParseError(0, "CSV is empty");
    const auto header = split_csv(lines[0].second);
    if (header.size() < 2)
        throw ParseError(lines[0].first, "header needs a corner cell and at least one scenario id");
    if (lines.size() < 2)
        throw ParseError(lines[0].first, "CSV has no variable rows");

    DataMatrix data;
    data.scenario_ids.assign(header.begin() + 1, header.end());
    const Index d = static_cast<Index>(data.scenario_ids.size());
    data.values.resize(static_cast<Index>(lines.size() - 1), d);
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto cells = split_csv(lines[r].second);
        if (static_cast<Index>(cells.size()) != d + 1)
            throw ParseError(lines[r].first, "expected " + std::to_string(d + 1) + " cells, got " +
                                                 std::to_string(cells.size()));
        if (cells[0].empty())
            throw ParseError(lines[r].first, "missing variable label");
        data.variable_labels.push_back(cells[0]);
        for (Index j = 0; j < d; ++j)
            data.values(static_cast<Index>(r - 1), j) = parse_number(cells[j + 1], lines[r].first);
    }
    try {
        validate(data);
    } catch (const Error& e) {
        throw ParseError(0, e.what());
    }
    return data;
}

void format_csv(std::ostream& out, const DataMatrix& data)
{
    out << "variable";
    for (const auto& id : data.scenario_ids)
        out << ',' << id;
    out << '\n';
    for (Index i = 0; i < data.values.rows(); ++i) {
        out << data.variable_labels[i];
        for (Index j = 0; j < data.values.cols(); ++j) {
            out << ',';
            write_number(out, data.values(i, j));
        }
        out << '\n';
    }
}

DataMatrix read_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(0, "cannot open " + path.string());
    return parse_csv(in);
}

void write_csv(const DataMatrix& data, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
    format_csv(out, data);
}

LabelledMatrix parse_labelled_matrix(std::istream& in)
{
    const auto lines = content_lines(in);
    if (lines.size() < 2)
        throw ParseError(0, "matrix CSV needs a label header and at least one row");
    LabelledMatrix m;
    m.column_labels = split_csv(lines[0].second);
    for (const auto& label : m.column_labels)
        if (label.empty())
            throw ParseError(lines[0].first, "empty column label");
    const Index cols = static_cast<Index>(m.column_labels.size());
    m.values.resize(static_cast<Index>(lines.size() - 1), cols);
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto cells = split_csv(lines[r].second);
        if (static_cast<Index>(cells.size()) != cols)
            throw ParseError(lines[r].first, "row width differs from header");
        for (Index j = 0; j < cols; ++j)
            m.values(static_cast<Index>(r - 1), j) = parse_number(cells[j], lines[r].first);
    }
    return m;
}

void format_labelled_matrix(std::ostream& out, const LabelledMatrix& m)
{
    for (std::size_t j = 0; j < m.column_labels.size(); ++j)
        out << (j ? "," : "") << m.column_labels[j];
    out << '\n';
    for (Index i = 0; i < m.values.rows(); ++i) {
        for (Index j = 0; j < m.values.cols(); ++j) {
            if (j)
                out << ',';
            write_number(out, m.values(i, j));
        }
        out << '\n';
    }
}

LabelledMatrix read_labelled_matrix(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(0, "cannot open " + path.string());
    return parse_labelled_matrix(in);
}

void write_labelled_matrix(const LabelledMatrix& m, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
    format_labelled_matrix(out, m);
}

} // namespace netid
