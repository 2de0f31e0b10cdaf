// Command-line front end: mine topics from a bag-of-words corpus, score a
// topics file, or export document-topic features for classification.

#include <charconv>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "swmh/error.hpp"
#include "swmh/pipeline.hpp"

namespace {

std::string config_path;

void add_corpus_options(CLI::App* cmd, swmh::RunConfig& config) {
    cmd->add_option("--docword", config.docword_path,
                    "UCI bag-of-words counts file (D, W, NNZ header)")
        ->required();
    cmd->add_option("--vocab", config.vocab_path,
                    "vocabulary file, one term per line")
        ->required();
    cmd->add_option("--labels", config.labels_path,
                    "optional class labels, one integer per document");
    cmd->add_option("--min-term-freq", config.min_term_freq,
                    "drop terms with a smaller total corpus frequency")
        ->capture_default_str();
    cmd->add_option("--fraction", config.fraction,
                    "mine only the first ceil(fraction*D) documents")
        ->capture_default_str();
    cmd->add_option("--out", config.out_dir, "output directory")->required();
    cmd->add_option("--threads", config.threads,
                    "worker threads (0 = all cores, 1 = sequential)")
        ->capture_default_str();
    cmd->add_option("--config", config_path,
                    "key=value defaults file (command-line flags win)");
}

void add_mine_options(CLI::App* cmd, swmh::RunConfig& config) {
    cmd->add_flag("--weighted,!--unweighted", config.weighted,
                  "weight documents by inverse size (default on)");
    cmd->add_option("--s-star", config.s_star,
                    "similarity giving a 50% collision chance")
        ->capture_default_str();
    cmd->add_option("--r", config.r, "MinHash values per tuple")
        ->capture_default_str();
    cmd->add_option("--tables", config.tables,
                    "explicit table count (default derives from --s-star/--r)");
    cmd->add_option("--quantization", config.quantization,
                    "sub-elements per unit weight")
        ->capture_default_str();
    cmd->add_option("--overlap", config.overlap,
                    "overlap threshold for merging term sets")
        ->capture_default_str();
    cmd->add_option("--min-set-size", config.min_set_size,
                    "smallest bucket emitted as a co-occurring term set")
        ->capture_default_str();
    cmd->add_option("--min-cluster-size", config.min_cluster_size,
                    "smallest cluster kept as a topic")
        ->capture_default_str();
    cmd->add_option("--top-m", config.top_m,
                    "terms per topic used by the rank score")
        ->capture_default_str();
    cmd->add_option("--seed", config.seed, "hash seed")->capture_default_str();
    cmd->add_option("--dump-sets", config.dump_sets_path,
                    "also dump every co-occurring term set to this file");

    auto* s2 = cmd->add_option_group("stage2", "set-clustering accelerator");
    s2->add_option("--stage2-s-star", config.stage2_s_star,
                   "candidate-pair target similarity (default overlap*0.85)");
    s2->add_option("--stage2-r", config.stage2_r,
                   "candidate-pair tuple size")
        ->capture_default_str();
    s2->add_option("--stage2-tables", config.stage2_tables,
                   "explicit candidate-pair table count");
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
    T parsed{};
    auto [ptr, ec] =
        std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw std::invalid_argument("config key \"" + key +
                                    "\" has a bad value \"" + value + "\"");
    return parsed;
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        double parsed = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key \"" + key +
                                    "\" has a bad value \"" + value + "\"");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw std::invalid_argument("config key \"" + key +
                                "\" has a bad value \"" + value + "\"");
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Applies key=value lines to every setting the user did not pass as a flag,
// giving the documented precedence: flags over config file over defaults.
void apply_config_file(const CLI::App* cmd, swmh::RunConfig& config) {
    if (config_path.empty()) return;
    std::ifstream in(config_path);
    if (!in) throw swmh::IoError("cannot open " + config_path + " for reading");

    struct Key {
        const char* name;
        const char* flag;  // skip when this flag was given explicitly
        std::function<void(const std::string&, const std::string&)> apply;
    };
    const std::vector<Key> keys{
        {"docword", "--docword",
         [&](const std::string&, const std::string& v) { config.docword_path = v; }},
        {"vocab", "--vocab",
         [&](const std::string&, const std::string& v) { config.vocab_path = v; }},
        {"labels", "--labels",
         [&](const std::string&, const std::string& v) { config.labels_path = v; }},
        {"topics", "--topics",
         [&](const std::string&, const std::string& v) { config.topics_path = v; }},
        {"out", "--out",
         [&](const std::string&, const std::string& v) { config.out_dir = v; }},
        {"dump-sets", "--dump-sets",
         [&](const std::string&, const std::string& v) { config.dump_sets_path = v; }},
        {"weighted", "--weighted",
         [&](const std::string& k, const std::string& v) {
             config.weighted = parse_bool(k, v);
         }},
        {"unweighted", "--weighted",
         [&](const std::string& k, const std::string& v) {
             config.weighted = !parse_bool(k, v);
         }},
        {"s-star", "--s-star",
         [&](const std::string& k, const std::string& v) {
             config.s_star = parse_real(k, v);
         }},
        {"r", "--r",
         [&](const std::string& k, const std::string& v) {
             config.r = parse_number<std::uint32_t>(k, v);
         }},
        {"tables", "--tables",
         [&](const std::string& k, const std::string& v) {
             config.tables = parse_number<std::uint32_t>(k, v);
         }},
        {"quantization", "--quantization",
         [&](const std::string& k, const std::string& v) {
             config.quantization = parse_number<std::uint32_t>(k, v);
         }},
        {"overlap", "--overlap",
         [&](const std::string& k, const std::string& v) {
             config.overlap = parse_real(k, v);
         }},
        {"min-set-size", "--min-set-size",
         [&](const std::string& k, const std::string& v) {
             config.min_set_size = parse_number<std::uint32_t>(k, v);
         }},
        {"min-cluster-size", "--min-cluster-size",
         [&](const std::string& k, const std::string& v) {
             config.min_cluster_size = parse_number<std::uint32_t>(k, v);
         }},
        {"min-term-freq", "--min-term-freq",
         [&](const std::string& k, const std::string& v) {
             config.min_term_freq = parse_number<swmh::Freq>(k, v);
         }},
        {"top-m", "--top-m",
         [&](const std::string& k, const std::string& v) {
             config.top_m = parse_number<std::uint32_t>(k, v);
         }},
        {"seed", "--seed",
         [&](const std::string& k, const std::string& v) {
             config.seed = parse_number<std::uint64_t>(k, v);
         }},
        {"threads", "--threads",
         [&](const std::string& k, const std::string& v) {
             config.threads = parse_number<std::uint32_t>(k, v);
         }},
        {"fraction", "--fraction",
         [&](const std::string& k, const std::string& v) {
             config.fraction = parse_real(k, v);
         }},
        {"stage2-s-star", "--stage2-s-star",
         [&](const std::string& k, const std::string& v) {
             config.stage2_s_star = parse_real(k, v);
         }},
        {"stage2-r", "--stage2-r",
         [&](const std::string& k, const std::string& v) {
             config.stage2_r = parse_number<std::uint32_t>(k, v);
         }},
        {"stage2-tables", "--stage2-tables",
         [&](const std::string& k, const std::string& v) {
             config.stage2_tables = parse_number<std::uint32_t>(k, v);
         }},
    };

    auto given = [&](const char* flag) {
        const CLI::Option* opt = cmd->get_option_no_throw(flag);
        if (opt == nullptr) {
            for (const CLI::App* group : cmd->get_subcommands(nullptr))
                if ((opt = group->get_option_no_throw(flag)) != nullptr) break;
        }
        return opt != nullptr && opt->count() > 0;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        std::size_t eq = text.find('=');
        if (eq == std::string::npos)
            throw swmh::ParseError(config_path, line_no,
                                   "expected key=value, got \"" + text + "\"");
        std::string key = trim(text.substr(0, eq));
        std::string value = trim(text.substr(eq + 1));
        bool known = false;
        for (const Key& k : keys) {
            if (key != k.name) continue;
            known = true;
            if (!given(k.flag)) k.apply(key, value);
            break;
        }
        if (!known)
            throw std::invalid_argument("unknown config key \"" + key + "\"");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Topic mining by weighted min-hashing of inverted file lists"};
    app.require_subcommand(1);

    swmh::RunConfig config;

    CLI::App* mine = app.add_subcommand(
        "mine", "mine topics; writes topics.txt and stats.csv");
    add_corpus_options(mine, config);
    add_mine_options(mine, config);

    CLI::App* eval = app.add_subcommand(
        "eval", "score a topics file; writes coherence.csv");
    add_corpus_options(eval, config);
    eval->add_option("--topics", config.topics_path, "topics file to score")
        ->required();
    eval->add_option("--top-m", config.top_m,
                     "terms per topic used by coherence and rank score")
        ->capture_default_str();

    CLI::App* features = app.add_subcommand(
        "features", "export document-topic features; writes features.txt");
    add_corpus_options(features, config);
    features
        ->add_option("--topics", config.topics_path,
                     "topics file to project documents onto")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // 1 on usage errors, 0 for --help
    }

    try {
        if (mine->parsed()) {
            apply_config_file(mine, config);
            swmh::cmd_mine(config);
        } else if (eval->parsed()) {
            apply_config_file(eval, config);
            swmh::cmd_eval(config);
        } else if (features->parsed()) {
            apply_config_file(features, config);
            swmh::cmd_features(config);
        }
    } catch (const swmh::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const swmh::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
