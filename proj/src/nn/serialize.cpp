#include "molsrl/nn/serialize.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include <json.hpp>

namespace molsrl::nn {

static_assert(std::endian::native == std::endian::little, "parameter files assume a little-endian host");

namespace {

constexpr char kMagic[8] = {'M', 'O', 'L', 'S', 'Q', 'N', 'E', 'T'};

nlohmann::json shape_json(const momdp::ObservationShape& s) {
    return {{"kind", s.kind == momdp::ObservationKind::Image ? "image" : "raw"},
            {"channels", s.channels},
            {"rows", s.rows},
            {"cols", s.cols}};
}

momdp::ObservationShape shape_from(const nlohmann::json& j) {
    momdp::ObservationShape s;
    s.kind = j.at("kind").get<std::string>() == "image" ? momdp::ObservationKind::Image : momdp::ObservationKind::Raw;
    s.channels = j.at("channels").get<std::size_t>();
    s.rows = j.at("rows").get<std::size_t>();
    s.cols = j.at("cols").get<std::size_t>();
    return s;
}

}  // namespace

void save_network(std::ostream& out, const QNetwork& net) {
    const auto& a = net.architecture();
    const nlohmann::json header = {
        {"architecture",
         {{"kind", a.kind == ArchitectureTemplate::Kind::Conv ? "conv" : "mlp"},
          {"input", shape_json(a.input)},
          {"hidden", a.hidden},
          {"conv_channels", a.conv_channels},
          {"kernel", a.kernel},
          {"activation", a.activation == Activation::Relu ? "relu" : "identity"}}},
        {"actions", net.actions()},
        {"objectives", net.objectives()},
        {"seed", net.seed()},
        {"parameters", net.parameter_count()},
    };
    const std::string text = header.dump();
    const std::uint64_t length = text.size();
    out.write(kMagic, sizeof(kMagic));
    out.write(reinterpret_cast<const char*>(&length), sizeof(length));
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    const auto params = net.flat_parameters();
    out.write(reinterpret_cast<const char*>(params.data()), static_cast<std::streamsize>(params.size() * sizeof(double)));
    if (!out) throw std::runtime_error("save_network: write failed");
}

QNetwork load_network(std::istream& in) {
    char magic[8];
    if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw ConfigError("load_network: not a network file");
    std::uint64_t length = 0;
    if (!in.read(reinterpret_cast<char*>(&length), sizeof(length)) || length > (1u << 20))
        throw ConfigError("load_network: bad header length");
    std::string text(length, '\0');
    if (!in.read(text.data(), static_cast<std::streamsize>(length))) throw ConfigError("load_network: truncated header");

    nlohmann::json header;
    try {
        header = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("load_network: bad header: ") + e.what());
    }
    try {
        const auto& a = header.at("architecture");
        ArchitectureTemplate arch;
        arch.kind = a.at("kind").get<std::string>() == "conv" ? ArchitectureTemplate::Kind::Conv
                                                              : ArchitectureTemplate::Kind::Mlp;
        arch.input = shape_from(a.at("input"));
        arch.hidden = a.at("hidden").get<std::vector<std::size_t>>();
        arch.conv_channels = a.at("conv_channels").get<std::vector<std::size_t>>();
        arch.kernel = a.at("kernel").get<std::size_t>();
        arch.activation = a.at("activation").get<std::string>() == "relu" ? Activation::Relu : Activation::Identity;
        QNetwork net(arch, header.at("actions").get<std::size_t>(), header.at("objectives").get<std::size_t>(),
                     header.at("seed").get<std::uint64_t>());
        const auto count = header.at("parameters").get<std::size_t>();
        if (count != net.parameter_count()) throw ConfigError("load_network: parameter count mismatch");
        std::vector<double> params(count);
        if (!in.read(reinterpret_cast<char*>(params.data()), static_cast<std::streamsize>(count * sizeof(double))))
            throw ConfigError("load_network: truncated parameters");
        net.set_flat_parameters(params);
        return net;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("load_network: bad header: ") + e.what());
    }
}

void save_network(const std::filesystem::path& path, const QNetwork& net) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_network: cannot open " + path.string());
    save_network(out, net);
}

QNetwork load_network(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("load_network: cannot open " + path.string());
    return load_network(in);
}

}  // namespace molsrl::nn
