#include "qndsim/config_io.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "qndsim/errors.hpp"

namespace qnd {
namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, std::string_view text) {
    T value{};
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty()) {
        throw ConfigError(key, "not a valid number: '" + std::string(text) + "'");
    }
    return value;
}

void assign_key(ConfigOverrides& out, const std::string& key, std::string_view value) {
    if (key == "protocol") {
        const auto p = parse_protocol(value);
        if (!p) throw ConfigError(key, "expected a, b or c, got '" + std::string(value) + "'");
        out.protocol = *p;
    } else if (key == "atoms") {
        out.atoms = parse_number<int>(key, value);
    } else if (key == "atoms2") {
        out.atoms2 = parse_number<int>(key, value);
    } else if (key == "chi-tau") {
        out.chi_tau = parse_number<double>(key, value);
    } else if (key == "photons") {
        out.photons = parse_number<int>(key, value);
    } else if (key == "photons2") {
        out.photons2 = parse_number<int>(key, value);
    } else if (key == "theta") {
        out.theta = parse_number<double>(key, value);
    } else if (key == "trajectories") {
        out.trajectories = parse_number<int>(key, value);
    } else if (key == "seed") {
        out.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "stride") {
        out.stride = parse_number<int>(key, value);
    } else {
        throw ConfigError(key, "unknown configuration key");
    }
}

template <typename T>
void take(std::optional<T>& dst, const std::optional<T>& src) {
    if (src) dst = src;
}

}  // namespace

void ConfigOverrides::merge_from(const ConfigOverrides& higher) {
    take(protocol, higher.protocol);
    take(atoms, higher.atoms);
    take(atoms2, higher.atoms2);
    take(chi_tau, higher.chi_tau);
    take(photons, higher.photons);
    take(photons2, higher.photons2);
    take(theta, higher.theta);
    take(trajectories, higher.trajectories);
    take(seed, higher.seed);
    take(stride, higher.stride);
}

ProtocolConfig ConfigOverrides::resolve() const {
    ProtocolConfig c = ProtocolConfig::defaults(protocol.value_or(Protocol::a_pure_jz));
    if (atoms) c.atoms_1 = *atoms;
    c.atoms_2 = atoms2.value_or(c.atoms_1);
    if (chi_tau) c.chi_tau = *chi_tau;
    if (photons) c.photons_phase1 = *photons;
    if (photons2) c.photons_phase2 = *photons2;
    if (theta) c.rotation_angle = *theta;
    if (trajectories) c.trajectories = *trajectories;
    if (seed) c.seed = *seed;
    if (stride) c.record_stride = *stride;
    c.validate();
    return c;
}

ConfigOverrides parse_config_text(std::string_view text) {
    ConfigOverrides out;
    bool in_config = true;
    int line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#' || line.front() == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("line " + std::to_string(line_no), "malformed section header");
            in_config = trim(line.substr(1, line.size() - 2)) == "config";
            continue;
        }
        if (!in_config) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
        }
        assign_key(out, std::string(trim(line.substr(0, eq))), trim(line.substr(eq + 1)));
    }
    return out;
}

ConfigOverrides read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("--config", "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::string format_config_section(const ProtocolConfig& c) {
    std::ostringstream out;
    out << "[config]\n"
        << "protocol = " << protocol_tag(c.protocol) << '\n'
        << "atoms = " << c.atoms_1 << '\n'
        << "atoms2 = " << c.atoms_2 << '\n'
        << "chi-tau = " << format_double(c.chi_tau) << '\n'
        << "photons = " << c.photons_phase1 << '\n'
        << "photons2 = " << c.photons_phase2 << '\n'
        << "theta = " << format_double(c.rotation_angle) << '\n'
        << "trajectories = " << c.trajectories << '\n'
        << "seed = " << c.seed << '\n'
        << "stride = " << c.record_stride << '\n';
    return out.str();
}

CliOptions parse_config(std::span<const std::string> args) {
    CLI::App app{"Quantum-trajectory simulator for two atomic samples under QND photon counting", "qndsim"};

    std::string protocol;
    int atoms = 0;
    int atoms2 = 0;
    double chi_tau = 0.0;
    int photons = 0;
    int photons2 = 0;
    double theta = 0.0;
    int trajectories = 0;
    std::uint64_t seed = 0;
    int stride = 0;
    std::string config_file;
    std::string out_dir = "runs";
    int threads = 0;
    std::string kernel_name;
    bool quiet = false;

    auto* o_protocol = app.add_option("--protocol", protocol, "a: J_z counting, b: count/rotate/count, c: rotate every click");
    auto* o_atoms = app.add_option("--atoms", atoms, "atoms per sample (default 20)");
    auto* o_atoms2 = app.add_option("--atoms2", atoms2, "atoms in sample 2 (default: --atoms)");
    auto* o_chi = app.add_option("--chi-tau", chi_tau, "phase per photon per atom in |1>, radians (default 0.24)");
    auto* o_photons = app.add_option("--photons", photons, "clicks in the first phase (default 500)");
    auto* o_photons2 = app.add_option("--photons2", photons2, "clicks after the rotation, protocol b (default 500)");
    auto* o_theta = app.add_option("--theta", theta, "rotation angle in radians (b: pi/2, c: pi/5)");
    auto* o_traj = app.add_option("--trajectories", trajectories, "trajectories in the batch (default 50)");
    auto* o_seed = app.add_option("--seed", seed, "master seed (default 1)");
    auto* o_stride = app.add_option("--stride", stride, "record metrics every k clicks (default 1)");
    app.add_option("--config", config_file, "key = value file, e.g. a previous run's manifest.txt");
    app.add_option("--out", out_dir, "output root directory (default runs)");
    app.add_option("--threads", threads, "worker threads, 0 = all cores");
    app.add_option("--kernels", kernel_name, "scalar or avx2 (default: best available)");
    app.add_flag("--quiet", quiet, "no summary on stdout");

    CliOptions result;
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        result.help = true;
        result.help_text = app.help();
        return result;
    } catch (const CLI::ParseError& e) {
        throw ConfigError("arguments", e.what());
    }

    ConfigOverrides merged;
    if (!config_file.empty()) merged = read_config_file(config_file);
    ConfigOverrides flags;
    if (o_protocol->count()) {
        const auto p = parse_protocol(protocol);
        if (!p) throw ConfigError("--protocol", "expected a, b or c, got '" + protocol + "'");
        flags.protocol = *p;
    }
    if (o_atoms->count()) flags.atoms = atoms;
    if (o_atoms2->count()) flags.atoms2 = atoms2;
    if (o_chi->count()) flags.chi_tau = chi_tau;
    if (o_photons->count()) flags.photons = photons;
    if (o_photons2->count()) flags.photons2 = photons2;
    if (o_theta->count()) flags.theta = theta;
    if (o_traj->count()) flags.trajectories = trajectories;
    if (o_seed->count()) flags.seed = seed;
    if (o_stride->count()) flags.stride = stride;
    merged.merge_from(flags);

    result.config = merged.resolve();
    result.out_dir = out_dir;
    if (threads < 0) throw ConfigError("--threads", "must be >= 0");
    result.threads = threads;
    if (!kernel_name.empty()) {
        if (kernel_name == "scalar") {
            result.kernels = kernels::Backend::scalar;
        } else if (kernel_name == "avx2") {
            if (!kernels::available(kernels::Backend::avx2)) throw ConfigError("--kernels", "avx2 not available on this CPU");
            result.kernels = kernels::Backend::avx2;
        } else {
            throw ConfigError("--kernels", "expected scalar or avx2, got '" + kernel_name + "'");
        }
    }
    result.quiet = quiet;
    return result;
}

CliOptions parse_config(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return parse_config(args);
}

std::string format_manifest(const RunManifest& m) {
    std::ostringstream out;
    out << "# qndsim run manifest\n" << format_config_section(m.config) << '\n';
    out << "[run]\n"
        << "artifact_version = " << m.artifact_version << '\n'
        << "kernels = " << m.kernels << '\n'
        << "started = " << m.started << '\n'
        << "finished = " << m.finished << '\n';
    if (m.rotation_after_photon) out << "rotation_after_photon = " << *m.rotation_after_photon << '\n';
    out << "\n[outputs]\n" << "average = " << m.average_file.generic_string() << '\n';
    for (std::size_t i = 0; i < m.trajectory_files.size(); ++i) {
        out << "trajectory." << i << " = " << m.trajectory_files[i].generic_string() << '\n';
    }
    if (m.capture) {
        const CaptureStatistic& c = *m.capture;
        out << "\n[capture]\n"
            << "threshold = " << format_double(c.threshold) << '\n'
            << "captured = " << c.captured << '\n'
            << "total = " << c.total << '\n'
            << "capture_fraction = " << format_double(c.fraction) << '\n'
            << "ci95_low = " << format_double(c.ci_low) << '\n'
            << "ci95_high = " << format_double(c.ci_high) << '\n';
    }
    return out.str();
}

std::string utc_timestamp_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace qnd
