#include "molsrl/ccs/csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace molsrl::ccs {

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_double(const std::string& s) {
    double x = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw ConfigError("CCS csv: bad number '" + s + "'");
    return x;
}

}  // namespace

void write_ccs_csv(std::ostream& out, const PartialCCS& s, const std::string& source) {
    const std::size_t n = s.empty() ? 2 : s[0].size();
    for (std::size_t i = 0; i < n; ++i) out << 'v' << i + 1 << ',';
    for (std::size_t i = 0; i < n; ++i) out << 'w' << i + 1 << ',';
    out << "iteration,source\n";
    for (const auto& v : s) {
        for (double c : v.components) out << format_double(c) << ',';
        for (std::size_t i = 0; i < n; ++i) {
            if (v.provenance) out << format_double((*v.provenance)[i]);
            out << ',';
        }
        out << v.iteration << ',' << source << '\n';
    }
}

PartialCCS read_ccs_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("CCS csv: missing header");
    const auto header = split(line);
    if (header.size() < 6 || (header.size() - 2) % 2 != 0) throw ConfigError("CCS csv: malformed header");
    const std::size_t n = (header.size() - 2) / 2;
    std::vector<ValueVector> vectors;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split(line);
        if (fields.size() != header.size()) throw ConfigError("CCS csv: wrong field count");
        ValueVector v;
        for (std::size_t i = 0; i < n; ++i) v.components.push_back(parse_double(fields[i]));
        if (!fields[n].empty()) {
            std::vector<double> w;
            for (std::size_t i = 0; i < n; ++i) w.push_back(parse_double(fields[n + i]));
            v.provenance = WeightVector(std::move(w));
        }
        v.iteration = std::stoi(fields[2 * n]);
        vectors.push_back(std::move(v));
    }
    return PartialCCS(std::move(vectors));
}

}  // namespace molsrl::ccs
