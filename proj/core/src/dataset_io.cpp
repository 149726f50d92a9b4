#include "bnpid/dataset_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "bnpid/errors.hpp"

namespace bnpid {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

}  // namespace

std::string format_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

void write_dataset_csv(std::ostream& out, const Dataset& data) {
    for (std::size_t c = 0; c < data.cols(); ++c) out << (c ? "," : "") << data.columns[c];
    out << '\n';
    for (std::size_t r = 0; r < data.rows(); ++r) {
        for (std::size_t c = 0; c < data.cols(); ++c) out << (c ? "," : "") << format_number(data.at(r, c));
        out << '\n';
    }
}

Dataset read_dataset_csv(std::istream& in) {
    Dataset data;
    std::string line;
    if (!std::getline(in, line)) throw ParameterError("read_dataset_csv: missing header row");
    data.columns = split_csv_line(line);
    if (data.columns.empty()) throw ParameterError("read_dataset_csv: empty header row");
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != data.cols()) {
            throw ParameterError("read_dataset_csv: line " + std::to_string(line_no) + " has " +
                                 std::to_string(fields.size()) + " fields, expected " + std::to_string(data.cols()));
        }
        for (const auto& f : fields) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(f, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != f.size()) {
                throw ParameterError("read_dataset_csv: line " + std::to_string(line_no) + ": bad number '" + f + "'");
            }
            data.values.push_back(v);
        }
    }
    return data;
}

}  // namespace bnpid
