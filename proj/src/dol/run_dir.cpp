#include "molsrl/dol/run_dir.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "molsrl/ccs/csv.hpp"
#include "molsrl/nn/serialize.hpp"

namespace molsrl::dol {

static_assert(std::endian::native == std::endian::little, "table files assume a little-endian host");

namespace {

constexpr char kTableMagic[8] = {'M', 'O', 'L', 'S', 'Q', 'T', 'A', 'B'};

void write_u64(std::ostream& out, std::uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint64_t read_u64(std::istream& in) {
    std::uint64_t v = 0;
    if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) throw ConfigError("table file truncated");
    return v;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

}  // namespace

std::string weight_hash(const ccs::WeightVector& w) {
    // FNV-1a, fixed so names do not depend on the standard library's hash.
    std::uint64_t h = 1469598103934665603ULL;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const std::string text = ccs::format_double(w[i]) + ";";
        for (unsigned char c : text) {
            h ^= c;
            h *= 1099511628211ULL;
        }
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

void write_iterations_csv(std::ostream& out, const std::vector<IterationRecord>& log, std::size_t objectives) {
    out << "iteration";
    for (std::size_t k = 0; k < objectives; ++k) out << ",w" << k + 1;
    out << ",priority";
    for (std::size_t k = 0; k < objectives; ++k) out << ",v" << k + 1;
    out << ",accepted,ccs_size,queue_size,episodes\n";
    for (const auto& r : log) {
        out << r.iteration;
        for (std::size_t k = 0; k < objectives; ++k) out << ',' << ccs::format_double(r.weight[k]);
        out << ',' << ccs::format_double(r.priority);
        for (std::size_t k = 0; k < objectives; ++k) out << ',' << ccs::format_double(r.value[k]);
        out << ',' << (r.accepted ? 1 : 0) << ',' << r.ccs.size() << ',' << r.queue.size() << ',' << r.episodes
            << '\n';
    }
}

void save_table(std::ostream& out, const solver::QTable& table) {
    out.write(kTableMagic, sizeof kTableMagic);
    write_u64(out, table.states());
    write_u64(out, table.actions());
    write_u64(out, table.objectives());
    for (double x : table.data()) write_u64(out, std::bit_cast<std::uint64_t>(x));
}

solver::QTable load_table(std::istream& in) {
    char magic[8];
    if (!in.read(magic, sizeof magic) || !std::equal(magic, magic + 8, kTableMagic))
        throw ConfigError("not a q-table file");
    const auto states = read_u64(in);
    const auto actions = read_u64(in);
    const auto objectives = read_u64(in);
    solver::QTable table(states, actions, objectives);
    for (std::size_t s = 0; s < states; ++s)
        for (std::size_t a = 0; a < actions; ++a) {
            auto cell = table.at(s, a);
            for (auto& x : cell) x = std::bit_cast<double>(read_u64(in));
        }
    return table;
}

void write_run_directory(const std::filesystem::path& dir, const DolResult& result, std::size_t objectives,
                         const std::string& source) {
    std::filesystem::create_directories(dir / "models");
    {
        auto out = open_for_write(dir / "iterations.csv");
        write_iterations_csv(out, result.log, objectives);
    }
    {
        auto out = open_for_write(dir / "ccs.csv");
        ccs::write_ccs_csv(out, result.ccs, source);
    }
    {
        auto out = open_for_write(dir / "timing.txt");
        out << "iteration,seconds\n";
        for (const auto& r : result.log) out << r.iteration << ',' << r.seconds << '\n';
    }
    for (const auto& entry : result.models.entries()) {
        const auto path = dir / "models" / (weight_hash(entry.weight) + ".bin");
        if (const auto* net = std::get_if<nn::QNetwork>(&entry.model)) {
            nn::save_network(path, *net);
        } else if (const auto* table = std::get_if<solver::QTable>(&entry.model)) {
            auto out = open_for_write(path);
            save_table(out, *table);
        }
    }
}

}  // namespace molsrl::dol
