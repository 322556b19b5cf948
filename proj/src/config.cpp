#include "fraclbp/config.hpp"

#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "fraclbp/csv.hpp"

namespace fraclbp {

namespace {

// Drops a '#' or ';' comment that starts the line or follows whitespace.
std::string strip_comment(const std::string& line) {
    for (std::size_t i = 0; i < line.size(); ++i) {
        if ((line[i] == '#' || line[i] == ';') && (i == 0 || std::isspace(static_cast<unsigned char>(line[i - 1])))) {
            return line.substr(0, i);
        }
    }
    return line;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    if (trim(value).empty()) return items;
    std::stringstream in(value);
    std::string item;
    while (std::getline(in, item, ',')) items.push_back(trim(item));
    return items;
}

template <typename T>
std::string join_list(const std::vector<T>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ',';
        if constexpr (std::is_floating_point_v<T>) {
            out += csv::format_double(values[i]);
        } else {
            out += std::to_string(values[i]);
        }
    }
    return out;
}

template <typename T>
std::vector<T> int_list(const std::string& value, const std::string& key) {
    std::vector<T> out;
    for (const std::string& item : split_list(value)) out.push_back(static_cast<T>(csv::parse_int(item, key)));
    return out;
}

std::vector<double> double_list(const std::string& value, const std::string& key) {
    std::vector<double> out;
    for (const std::string& item : split_list(value)) out.push_back(csv::parse_double(item, key));
    return out;
}

// Estimator parameter blocks are filled after all keys are read.
struct EstimatorSettings {
    std::vector<std::string> tags{"BC"};
    std::vector<int> box_deltas;
    double max_radius = fractal::kDefaultMaxRadius;
    std::vector<int> lacunarity_deltas = fractal::default_lacunarity_deltas();
    std::vector<double> mf_qs = fractal::default_multifractal_qs();
    std::vector<int> mf_sizes = fractal::default_multifractal_sizes();
};

std::vector<features::EstimatorKind> build_estimators(const EstimatorSettings& s) {
    std::vector<features::EstimatorKind> kinds;
    for (const std::string& tag : s.tags) {
        features::EstimatorKind kind = features::estimator_from_tag(tag);
        if (auto* bc = std::get_if<features::BoxCounting>(&kind)) bc->deltas = s.box_deltas;
        if (auto* bm = std::get_if<features::BouligandMinkowski>(&kind)) bm->max_radius = s.max_radius;
        if (auto* l = std::get_if<features::Lacunarity>(&kind)) l->deltas = s.lacunarity_deltas;
        if (auto* mf = std::get_if<features::Multifractal>(&kind)) {
            mf->qs = s.mf_qs;
            mf->sizes = s.mf_sizes;
        }
        kinds.push_back(std::move(kind));
    }
    return kinds;
}

EstimatorSettings settings_of(const std::vector<features::EstimatorKind>& kinds) {
    EstimatorSettings s;
    s.tags.clear();
    for (const auto& kind : kinds) {
        s.tags.push_back(features::estimator_tag(kind));
        if (const auto* bc = std::get_if<features::BoxCounting>(&kind)) s.box_deltas = bc->deltas;
        if (const auto* bm = std::get_if<features::BouligandMinkowski>(&kind)) s.max_radius = bm->max_radius;
        if (const auto* l = std::get_if<features::Lacunarity>(&kind)) s.lacunarity_deltas = l->deltas;
        if (const auto* mf = std::get_if<features::Multifractal>(&kind)) {
            s.mf_qs = mf->qs;
            s.mf_sizes = mf->sizes;
        }
    }
    return s;
}

}  // namespace

std::string protocol_kind_name(bench::ProtocolKind kind) {
    return kind == bench::ProtocolKind::GroupHoldout ? "group-holdout" : "random-per-class";
}

bench::ProtocolKind parse_protocol_kind(const std::string& name) {
    if (name == "group-holdout") return bench::ProtocolKind::GroupHoldout;
    if (name == "random-per-class") return bench::ProtocolKind::RandomPerClass;
    fail(ErrorCode::ConfigError, "unknown protocol '" + name + "' (expected group-holdout or random-per-class)");
}

features::ExtractConfig RunConfig::extract_config() const {
    features::ExtractConfig c;
    c.lbp = lbp;
    c.levels = levels;
    c.kinds = estimators;
    c.threads = threads;
    return c;
}

bench::EvaluationConfig RunConfig::evaluation_config() const {
    bench::EvaluationConfig c;
    c.trainer = bench::pca_lda_trainer(retention, shrinkage);
    c.deviation = deviation;
    c.threads = threads;
    return c;
}

bench::SplitProtocol RunConfig::split_protocol() const {
    bench::SplitProtocol p = protocol;
    p.seed = seed;
    return p;
}

RunConfig parse_config(std::istream& in, const std::string& source) {
    RunConfig config;
    EstimatorSettings est;

    using Setter = std::function<void(const std::string&, const std::string&)>;
    const std::map<std::string, std::map<std::string, Setter>> table{
        {"lbp",
         {
             {"neighbors", [&](auto& v, auto& k) { config.lbp.neighbors = static_cast<int>(csv::parse_int(v, k)); }},
             {"radius", [&](auto& v, auto& k) { config.lbp.radius = csv::parse_double(v, k); }},
             {"levels", [&](auto& v, auto& k) { config.levels = int_list<std::uint32_t>(v, k); }},
         }},
        {"features",
         {
             {"estimators", [&](auto& v, auto&) { est.tags = split_list(v); }},
             {"box_deltas", [&](auto& v, auto& k) { est.box_deltas = int_list<int>(v, k); }},
             {"max_radius", [&](auto& v, auto& k) { est.max_radius = csv::parse_double(v, k); }},
             {"lacunarity_deltas",
              [&](auto& v, auto& k) {
                  est.lacunarity_deltas = v.empty() ? fractal::default_lacunarity_deltas() : int_list<int>(v, k);
              }},
             {"mf_qs",
              [&](auto& v, auto& k) { est.mf_qs = v.empty() ? fractal::default_multifractal_qs() : double_list(v, k); }},
             {"mf_sizes",
              [&](auto& v, auto& k) {
                  est.mf_sizes = v.empty() ? fractal::default_multifractal_sizes() : int_list<int>(v, k);
              }},
         }},
        {"classify",
         {
             {"retention", [&](auto& v, auto& k) { config.retention = csv::parse_double(v, k); }},
             {"shrinkage", [&](auto& v, auto& k) { config.shrinkage = csv::parse_double(v, k); }},
             {"deviation",
              [&](auto& v, auto&) {
                  if (v == "population") {
                      config.deviation = bench::Deviation::Population;
                  } else if (v == "sample") {
                      config.deviation = bench::Deviation::Sample;
                  } else {
                      fail(ErrorCode::ConfigError, "expected population or sample, got '" + v + "'");
                  }
              }},
             {"combos", [&](auto& v, auto&) { config.combos = split_list(v); }},
         }},
        {"protocol",
         {
             {"kind", [&](auto& v, auto&) { config.protocol.kind = parse_protocol_kind(v); }},
             {"train_per_class",
              [&](auto& v, auto& k) { config.protocol.train_per_class = static_cast<int>(csv::parse_int(v, k)); }},
             {"repetitions",
              [&](auto& v, auto& k) { config.protocol.repetitions = static_cast<int>(csv::parse_int(v, k)); }},
         }},
        {"run",
         {
             {"seed", [&](auto& v, auto& k) { config.seed = static_cast<std::uint64_t>(csv::parse_int(v, k)); }},
             {"threads", [&](auto& v, auto& k) { config.threads = static_cast<unsigned>(csv::parse_int(v, k)); }},
             {"out", [&](auto& v, auto&) { config.out = v; }},
         }},
    };

    std::string section;
    std::string line;
    int line_no = 0;
    std::set<std::string> seen;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(strip_comment(line));
        const std::string where = source + ":" + std::to_string(line_no);
        if (text.empty()) continue;
        if (text.front() == '[') {
            if (text.back() != ']') fail(ErrorCode::ConfigError, where + ": malformed section header");
            section = trim(text.substr(1, text.size() - 2));
            if (!table.contains(section)) fail(ErrorCode::ConfigError, where + ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) fail(ErrorCode::ConfigError, where + ": expected key = value");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (section.empty()) fail(ErrorCode::ConfigError, where + ": key '" + key + "' outside a section");
        const auto& keys = table.at(section);
        const auto it = keys.find(key);
        if (it == keys.end()) fail(ErrorCode::ConfigError, where + ": unknown key '" + key + "' in [" + section + "]");
        if (!seen.insert(section + "." + key).second) {
            fail(ErrorCode::ConfigError, where + ": duplicate key '" + key + "'");
        }
        try {
            it->second(value, key);
        } catch (const Error& e) {
            fail(ErrorCode::ConfigError, where + ": key '" + key + "': " + e.what());
        }
    }

    try {
        config.lbp.validate();
        config.estimators = build_estimators(est);
        if (config.estimators.empty()) fail(ErrorCode::InvalidArgument, "at least one estimator is required");
    } catch (const Error& e) {
        fail(ErrorCode::ConfigError, source + ": " + e.what());
    }
    return config;
}

RunConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) fail(ErrorCode::FileNotFound, "cannot open config " + file.string());
    return parse_config(in, file.string());
}

void write_config(const RunConfig& config, std::ostream& out) {
    const EstimatorSettings est = settings_of(config.estimators);
    std::string tags;
    for (std::size_t i = 0; i < est.tags.size(); ++i) tags += (i ? "," : "") + est.tags[i];
    std::string combos;
    for (std::size_t i = 0; i < config.combos.size(); ++i) combos += (i ? "," : "") + config.combos[i];

    out << "[lbp]\n"
        << "neighbors = " << config.lbp.neighbors << '\n'
        << "radius = " << csv::format_double(config.lbp.radius) << '\n'
        << "levels = " << join_list(config.levels) << "\n\n"
        << "[features]\n"
        << "estimators = " << tags << '\n'
        << "box_deltas = " << join_list(est.box_deltas) << '\n'
        << "max_radius = " << csv::format_double(est.max_radius) << '\n'
        << "lacunarity_deltas = " << join_list(est.lacunarity_deltas) << '\n'
        << "mf_qs = " << join_list(est.mf_qs) << '\n'
        << "mf_sizes = " << join_list(est.mf_sizes) << "\n\n"
        << "[classify]\n"
        << "retention = " << csv::format_double(config.retention) << '\n'
        << "shrinkage = " << csv::format_double(config.shrinkage) << '\n'
        << "deviation = " << (config.deviation == bench::Deviation::Population ? "population" : "sample") << '\n'
        << "combos = " << combos << "\n\n"
        << "[protocol]\n"
        << "kind = " << protocol_kind_name(config.protocol.kind) << '\n'
        << "train_per_class = " << config.protocol.train_per_class << '\n'
        << "repetitions = " << config.protocol.repetitions << "\n\n"
        << "[run]\n"
        << "seed = " << config.seed << '\n'
        << "threads = " << config.threads << '\n'
        << "out = " << config.out.string() << '\n';
}

}  // namespace fraclbp
