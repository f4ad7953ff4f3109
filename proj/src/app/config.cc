// Copyright 2026 The gradechain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gradechain/app/config.h"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "gradechain/error.h"

namespace gradechain::app {

using json = nlohmann::ordered_json;

namespace {

json yaml_node(const YAML::Node &node) {
    switch (node.Type()) {
        case YAML::NodeType::Null:
        case YAML::NodeType::Undefined:
            return nullptr;
        case YAML::NodeType::Scalar: {
            const std::string &s = node.Scalar();
            if (node.Tag() != "!") {
                static const std::regex integer("[+-]?[0-9]+");
                if (std::regex_match(s, integer)) {
                    try {
                        return std::stoll(s);
                    } catch (const std::out_of_range &) {
                        return s;
                    }
                }
                if (s == "true") {
                    return true;
                }
                if (s == "false") {
                    return false;
                }
            }
            return s;
        }
        case YAML::NodeType::Sequence: {
            json out = json::array();
            for (const auto &item : node) {
                out.push_back(yaml_node(item));
            }
            return out;
        }
        case YAML::NodeType::Map: {
            json out = json::object();
            for (const auto &kv : node) {
                out[kv.first.as<std::string>()] = yaml_node(kv.second);
            }
            return out;
        }
    }
    return nullptr;
}

/// Schema walker that names the offending path in every error.
class Reader {
   public:
    Reader(const json &node, std::string path) : node_(node), path_(std::move(path)) {
    }

    [[noreturn]] void fail(const std::string &what) const {
        throw ConfigError(path_ + ": " + what);
    }

    bool has(const std::string &key) const {
        return node_.is_object() && node_.contains(key) && !node_.at(key).is_null();
    }

    Reader at(const std::string &key) const {
        if (!node_.is_object()) {
            fail("expected a table");
        }
        if (!has(key)) {
            fail("missing key '" + key + "'");
        }
        return Reader(node_.at(key), path_ + "." + key);
    }

    void only(const std::set<std::string> &keys) const {
        if (!node_.is_object()) {
            fail("expected a table");
        }
        for (const auto &[k, _] : node_.items()) {
            if (!keys.count(k)) {
                fail("unknown key '" + k + "'");
            }
        }
    }

    std::vector<Reader> items() const {
        if (!node_.is_array()) {
            fail("expected a list");
        }
        std::vector<Reader> out;
        for (size_t i = 0; i < node_.size(); ++i) {
            out.emplace_back(node_[i], path_ + "[" + std::to_string(i) + "]");
        }
        return out;
    }

    std::vector<std::pair<std::string, Reader>> entries() const {
        if (!node_.is_object()) {
            fail("expected a table");
        }
        std::vector<std::pair<std::string, Reader>> out;
        for (const auto &[k, v] : node_.items()) {
            out.emplace_back(k, Reader(v, path_ + "." + k));
        }
        return out;
    }

    std::string text() const {
        if (node_.is_string()) {
            return node_.get<std::string>();
        }
        if (node_.is_number_integer()) {
            return std::to_string(node_.get<int64_t>());
        }
        fail("expected a string");
    }

    int64_t integer() const {
        if (!node_.is_number_integer()) {
            fail("expected an integer");
        }
        return node_.get<int64_t>();
    }

    int64_t integer_in(int64_t lo, int64_t hi) const {
        int64_t v = integer();
        if (v < lo || v > hi) {
            fail("expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        }
        return v;
    }

    bool boolean() const {
        if (!node_.is_boolean()) {
            fail("expected true or false");
        }
        return node_.get<bool>();
    }

    std::vector<std::string> strings() const {
        std::vector<std::string> out;
        for (const auto &r : items()) {
            out.push_back(r.text());
        }
        return out;
    }

    std::vector<int64_t> integers() const {
        std::vector<int64_t> out;
        for (const auto &r : items()) {
            out.push_back(r.integer());
        }
        return out;
    }

    const std::string &path() const {
        return path_;
    }

   private:
    const json &node_;
    std::string path_;
};

/// Runs a library call, turning its errors into config errors at `path`.
template <typename F>
auto guarded(const Reader &at, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error &e) {
        at.fail(e.what());
    }
}

Element parse_element(const Reader &r, size_t rank) {
    Element e;
    std::stringstream in(r.text());
    std::string part;
    while (std::getline(in, part, ',')) {
        try {
            size_t used = 0;
            e.push_back(std::stoll(part, &used));
            if (part.find_first_not_of(" \t", used) != std::string::npos) {
                r.fail("bad element '" + r.text() + "'");
            }
        } catch (const std::logic_error &) {
            r.fail("bad element '" + r.text() + "'");
        }
    }
    if (e.size() != rank) {
        r.fail("element '" + r.text() + "' needs " + std::to_string(rank) + " coordinates");
    }
    return e;
}

DegreeGroup read_group(const Reader &r) {
    r.only({"free_rank", "torsion_orders"});
    int free_rank = r.has("free_rank") ? static_cast<int>(r.at("free_rank").integer_in(0, 16)) : 0;
    std::vector<int64_t> torsion = r.has("torsion_orders") ? r.at("torsion_orders").integers() : std::vector<int64_t>{};
    return guarded(r, [&] { return DegreeGroup(free_rank, torsion); });
}

SampleAlgebraPtr read_sample(const Reader &r, const std::optional<DegreeGroup> &group, const SymbolTablePtr &symbols) {
    r.only({"kind", "d", "alpha", "names"});
    std::string kind = r.at("kind").text();
    SampleSpec spec;
    if (r.has("names")) {
        spec.names = r.at("names").strings();
    }
    if (kind == "function_algebra") {
        if (!group) {
            r.fail("function_algebra needs a group");
        }
        spec.kind = SampleKind::FunctionAlgebra;
        spec.group = *group;
    } else if (kind == "clock_shift" || kind == "parafermion") {
        spec.kind = kind == "clock_shift" ? SampleKind::ClockShift : SampleKind::Parafermion;
        spec.d = r.at("d").integer_in(2, 1 << 20);
    } else if (kind == "nc_torus") {
        spec.kind = SampleKind::NcTorus;
        Reader a = r.at("alpha");
        spec.alpha = guarded(a, [&] { return parse_phase(a.text(), symbols); });
    } else {
        r.at("kind").fail("unknown sample kind '" + kind + "'");
    }
    return guarded(r, [&] { return build_standard_sample(spec); });
}

Bicharacter read_bicharacter(const Reader &r, const DegreeGroup &group, const SymbolTablePtr &symbols) {
    auto rows = r.items();
    size_t n = group.rank();
    if (rows.size() != n) {
        r.fail("bicharacter needs " + std::to_string(n) + " rows");
    }
    std::vector<std::vector<Phase>> matrix;
    for (const auto &row : rows) {
        auto cells = row.items();
        if (cells.size() != n) {
            row.fail("row needs " + std::to_string(n) + " entries");
        }
        std::vector<Phase> out;
        for (const auto &c : cells) {
            out.push_back(guarded(c, [&] { return parse_phase(c.text(), symbols); }));
        }
        matrix.push_back(std::move(out));
    }
    return guarded(r, [&] { return Bicharacter(group, matrix); });
}

SampleState read_sample_state(const Reader &r, const SampleAlgebraPtr &sample, const SymbolTablePtr &symbols) {
    if (r.has("trace")) {
        if (!r.at("trace").boolean()) {
            r.at("trace").fail("trace must be true when present");
        }
        return SampleState::trace(sample);
    }
    std::map<Element, ExactScalar> values;
    for (const auto &[key, value] : r.at("values").entries()) {
        Element e = guarded(value, [&] {
            return sample->index_group().reduce(parse_element(Reader(json(key), value.path()),
                                                              sample->index_group().rank()));
        });
        if (values.count(e)) {
            value.fail("duplicate basis index");
        }
        values[e] = guarded(value, [&] { return parse_scalar(value.text(), symbols); });
    }
    return guarded(r, [&] { return SampleState(sample, values); });
}

AuditBudget read_budget(const Reader &r) {
    r.only({"samples", "max_sites", "max_letters", "exponent_bound", "seed", "canonical"});
    AuditBudget b;
    if (r.has("samples")) {
        b.samples = static_cast<int>(r.at("samples").integer_in(0, 1000000));
    }
    if (r.has("max_sites")) {
        b.max_sites = static_cast<int>(r.at("max_sites").integer_in(1, 64));
    }
    if (r.has("max_letters")) {
        b.max_letters = static_cast<int>(r.at("max_letters").integer_in(1, 64));
    }
    if (r.has("exponent_bound")) {
        b.exponent_bound = static_cast<int>(r.at("exponent_bound").integer_in(1, 1000));
    }
    if (r.has("seed")) {
        b.seed = static_cast<uint64_t>(r.at("seed").integer_in(0, INT64_MAX));
    }
    if (r.has("canonical")) {
        b.canonical = r.at("canonical").boolean();
    }
    return b;
}

const std::set<std::string> kChecks{"exchangeable", "spreadable", "stationary", "rn"};
const std::set<std::string> kActions{"torus", "transposition", "identity", "table"};

}  // namespace

json yaml_to_json(const std::string &text) {
    try {
        return yaml_node(YAML::Load(text));
    } catch (const YAML::Exception &e) {
        throw ConfigError(std::string("YAML: ") + e.what());
    }
}

json read_config_tree(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
        try {
            return json::parse(buffer.str());
        } catch (const json::parse_error &e) {
            throw ConfigError(std::string("JSON: ") + e.what());
        }
    }
    return yaml_to_json(buffer.str());
}

const SampleState &ExperimentConfig::sample_state(const std::string &name) const {
    for (const auto &s : sample_states) {
        if (s.name == name) {
            return s.state;
        }
    }
    throw ConfigError("unknown sample state '" + name + "'");
}

const ChainState &ExperimentConfig::state(const std::string &name) const {
    for (const auto &s : states) {
        if (s.name == name) {
            return s.state;
        }
    }
    throw ConfigError("unknown state '" + name + "'");
}

ExperimentConfig parse_config(const json &tree) {
    Reader root(tree, "config");
    root.only({"name", "symbols", "independent", "group", "sample", "bicharacter", "sample_states", "states", "audit",
               "audits", "braid", "obstruction"});
    ExperimentConfig cfg;
    cfg.name = root.has("name") ? root.at("name").text() : "";
    std::vector<std::string> symbols = root.has("symbols") ? root.at("symbols").strings() : std::vector<std::string>{};
    bool independent = root.has("independent") ? root.at("independent").boolean() : true;
    cfg.symbols = guarded(root, [&] { return SymbolTable::create(symbols, independent); });

    std::optional<DegreeGroup> group;
    if (root.has("group")) {
        group = read_group(root.at("group"));
    }
    if (root.has("sample")) {
        cfg.sample = read_sample(root.at("sample"), group, cfg.symbols);
        if (group && *group != cfg.sample->degree_group()) {
            root.at("group").fail("does not match the degree group " + cfg.sample->degree_group().str() +
                                  " of the sample");
        }
        group = cfg.sample->degree_group();
    }
    if (group) {
        cfg.group = *group;
    }
    if (root.has("bicharacter")) {
        if (!group) {
            root.at("bicharacter").fail("needs a group or a sample");
        }
        cfg.bicharacter = read_bicharacter(root.at("bicharacter"), *group, cfg.symbols);
    }
    if (cfg.sample && cfg.bicharacter) {
        cfg.chain = guarded(root, [&] { return make_chain(cfg.sample, *cfg.bicharacter); });
    }

    std::set<std::string> names;
    auto fresh = [&](const Reader &r) {
        std::string n = r.at("name").text();
        if (!names.insert(n).second) {
            r.at("name").fail("duplicate name '" + n + "'");
        }
        return n;
    };
    if (root.has("sample_states")) {
        if (!cfg.sample) {
            root.at("sample_states").fail("needs a sample");
        }
        for (const auto &r : root.at("sample_states").items()) {
            r.only({"name", "trace", "values"});
            std::string n = fresh(r);
            cfg.sample_states.push_back({n, read_sample_state(r, cfg.sample, cfg.symbols)});
        }
    }
    if (root.has("states")) {
        if (!cfg.chain) {
            root.at("states").fail("needs a sample and a bicharacter");
        }
        for (const auto &r : root.at("states").items()) {
            r.only({"name", "product", "pinned", "mixture"});
            std::string n = fresh(r);
            auto lookup_sample = [&](const Reader &at) {
                try {
                    return cfg.sample_state(at.text());
                } catch (const ConfigError &e) {
                    at.fail(e.what());
                }
            };
            if (r.has("product")) {
                SampleState omega = lookup_sample(r.at("product"));
                cfg.states.push_back({n, guarded(r, [&] { return ChainState::product(cfg.chain, omega); })});
            } else if (r.has("pinned")) {
                Reader p = r.at("pinned");
                p.only({"sites", "fallback", "period"});
                std::map<SiteIndex, SampleState> sites;
                if (p.has("sites")) {
                    for (const auto &[key, value] : p.at("sites").entries()) {
                        SiteIndex s = guarded(value, [&] { return SiteIndex::parse(key); });
                        sites.insert_or_assign(s, lookup_sample(value));
                    }
                }
                SampleState fallback = lookup_sample(p.at("fallback"));
                int64_t period = p.has("period") ? p.at("period").integer_in(0, 1 << 20) : 0;
                cfg.states.push_back(
                    {n, guarded(r, [&] { return ChainState::pinned(cfg.chain, sites, fallback, period); })});
            } else if (r.has("mixture")) {
                std::vector<std::pair<Rational, ChainState>> parts;
                for (const auto &c : r.at("mixture").items()) {
                    c.only({"weight", "state"});
                    Reader w = c.at("weight");
                    Rational weight = guarded(w, [&] { return parse_rational(w.text()); });
                    try {
                        parts.emplace_back(weight, cfg.state(c.at("state").text()));
                    } catch (const ConfigError &e) {
                        c.at("state").fail(e.what());
                    }
                }
                cfg.states.push_back({n, guarded(r, [&] { return ChainState::mixture(parts); })});
            } else {
                r.fail("a state needs one of product, pinned, mixture");
            }
        }
    }
    if (root.has("audit")) {
        cfg.budget = read_budget(root.at("audit"));
    }
    if (root.has("audits")) {
        for (const auto &r : root.at("audits").items()) {
            r.only({"state", "check", "shift"});
            AuditRequest a;
            a.state = r.at("state").text();
            a.check = r.has("check") ? r.at("check").text() : "rn";
            a.shift = r.has("shift") ? r.at("shift").integer_in(1, 1 << 20) : 1;
            if (!kChecks.count(a.check)) {
                r.at("check").fail("unknown check '" + a.check + "'");
            }
            try {
                cfg.state(a.state);
            } catch (const ConfigError &e) {
                r.at("state").fail(e.what());
            }
            cfg.audits.push_back(a);
        }
    }
    if (root.has("braid")) {
        Reader r = root.at("braid");
        r.only({"action", "window", "degree", "state", "phase", "images"});
        if (!cfg.chain) {
            r.fail("needs a sample and a bicharacter");
        }
        BraidConfig b;
        if (r.has("action")) {
            b.action = r.at("action").text();
        }
        if (!kActions.count(b.action)) {
            r.at("action").fail("unknown action '" + b.action + "'");
        }
        if (r.has("window")) {
            b.window = static_cast<int>(r.at("window").integer_in(1, 64));
        }
        if (r.has("degree")) {
            b.degree = static_cast<int>(r.at("degree").integer_in(0, 16));
        }
        if (r.has("state")) {
            b.state = r.at("state").text();
            try {
                cfg.state(b.state);
            } catch (const ConfigError &e) {
                r.at("state").fail(e.what());
            }
        }
        if (r.has("phase")) {
            Reader p = r.at("phase");
            b.phase = guarded(p, [&] { return parse_phase(p.text(), cfg.symbols); });
        }
        if (r.has("images")) {
            if (b.action != "table") {
                r.at("images").fail("images need action 'table'");
            }
            for (const auto &img : r.at("images").items()) {
                img.only({"generator", "site", "letter", "image"});
                BraidImage bi;
                bi.generator = static_cast<int>(img.at("generator").integer_in(1, 64));
                bi.site = img.at("site").integer_in(0, 64);
                Reader letter = img.at("letter");
                const auto &gens = cfg.sample->generator_names();
                auto it = std::find(gens.begin(), gens.end(), letter.text());
                if (it == gens.end()) {
                    letter.fail("unknown sample generator '" + letter.text() + "'");
                }
                bi.letter = static_cast<size_t>(it - gens.begin());
                bi.image = img.at("image").text();
                guarded(img.at("image"), [&] { return parse_chain_element(cfg.chain, bi.image); });
                b.images.push_back(bi);
            }
        }
        cfg.braid = b;
    }
    if (root.has("obstruction")) {
        Reader r = root.at("obstruction");
        r.only({"window", "omit_site0", "theta", "alpha"});
        ObstructionConfig o;
        if (r.has("window")) {
            o.window = static_cast<int>(r.at("window").integer_in(0, 64));
        }
        if (r.has("omit_site0")) {
            o.omit_site0 = r.at("omit_site0").boolean();
        }
        if (r.has("theta")) {
            o.theta = r.at("theta").text();
        }
        if (r.has("alpha")) {
            o.alpha = r.at("alpha").text();
        }
        cfg.obstruction = o;
    }
    return cfg;
}

ExperimentConfig load_config(const std::string &path) {
    return parse_config(read_config_tree(path));
}

}  // namespace gradechain::app
