#include "nocurl/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <vector>

namespace nocurl {

std::string matrix_to_csv(const Matrix& m) {
    std::string out;
    out.reserve(size_t(m.size()) * 8);
    char buf[64];
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), m(i, j));
            if (ec != std::errc())
                throw std::runtime_error("matrix_to_csv: formatting failed");
            if (j > 0) out.push_back(',');
            out.append(buf, ptr);
        }
        out.push_back('\n');
    }
    return out;
}

Matrix matrix_from_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    size_t pos = 0;
    Index row_number = 0;
    while (pos < text.size()) {
        size_t eol = text.find('\n', pos);
        std::string_view line(text.data() + pos, (eol == std::string::npos ? text.size() : eol) - pos);
        pos = (eol == std::string::npos) ? text.size() : eol + 1;
        ++row_number;
        if (line.empty() && pos >= text.size() && rows.empty()) break;

        std::vector<double> row;
        size_t field_start = 0;
        Index column = 0;
        while (true) {
            size_t comma = line.find(',', field_start);
            std::string_view field = line.substr(
                field_start, (comma == std::string_view::npos ? line.size() : comma) - field_start);
            ++column;
            double value = 0.0;
            auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
            if (ec != std::errc() || ptr != field.data() + field.size()) {
                std::ostringstream msg;
                msg << "matrix_from_csv: bad value at row " << row_number << ", column " << column;
                throw std::invalid_argument(msg.str());
            }
            row.push_back(value);
            if (comma == std::string_view::npos) break;
            field_start = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            std::ostringstream msg;
            msg << "matrix_from_csv: row " << row_number << " has " << row.size()
                << " values, expected " << rows.front().size();
            throw std::invalid_argument(msg.str());
        }
        rows.push_back(std::move(row));
    }

    if (rows.empty()) return Matrix(0, 0);
    Matrix m(Index(rows.size()), Index(rows.front().size()));
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) m(i, j) = rows[size_t(i)][size_t(j)];
    return m;
}

void write_matrix_csv(const Matrix& m, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_matrix_csv: cannot open " + path.string());
    std::string text = matrix_to_csv(m);
    out.write(text.data(), std::streamsize(text.size()));
    if (!out) throw std::runtime_error("write_matrix_csv: write failed for " + path.string());
}

Matrix read_matrix_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_matrix_csv: cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return matrix_from_csv(buffer.str());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
}

}  // namespace nocurl
