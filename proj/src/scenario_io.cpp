#include "evidentia/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace evidentia {

namespace {

using nlohmann::json;

class Parser {
public:
    explicit Parser(std::vector<Diagnostic>& diags) : diags_(diags) {}

    void fail(const std::string& path, const std::string& code, const std::string& message) {
        diags_.push_back({path, code, message});
    }

    bool clean() const { return diags_.empty(); }

    void check_keys(const json& obj, const std::string& path,
                    std::initializer_list<const char*> allowed) {
        for (const auto& [key, value] : obj.items()) {
            bool known = false;
            for (const char* a : allowed) {
                if (key == a) {
                    known = true;
                    break;
                }
            }
            if (!known) {
                fail(path + "/" + key, "unknown-field", "field is not part of the schema");
            }
        }
    }

    const json* require(const json& obj, const std::string& path, const char* key) {
        if (!obj.contains(key)) {
            fail(path + "/" + key, "missing-field", "required field is absent");
            return nullptr;
        }
        return &obj.at(key);
    }

    std::optional<std::string> get_string(const json& obj, const std::string& path,
                                          const char* key, bool required) {
        if (!obj.contains(key)) {
            if (required) {
                fail(path + "/" + key, "missing-field", "required field is absent");
            }
            return std::nullopt;
        }
        const json& v = obj.at(key);
        if (!v.is_string()) {
            fail(path + "/" + key, "invalid-type", "expected a string");
            return std::nullopt;
        }
        return v.get<std::string>();
    }

    std::optional<bool> get_bool(const json& obj, const std::string& path, const char* key,
                                 bool required) {
        if (!obj.contains(key)) {
            if (required) {
                fail(path + "/" + key, "missing-field", "required field is absent");
            }
            return std::nullopt;
        }
        const json& v = obj.at(key);
        if (!v.is_boolean()) {
            fail(path + "/" + key, "invalid-type", "expected a boolean");
            return std::nullopt;
        }
        return v.get<bool>();
    }

    std::optional<double> get_number(const json& obj, const std::string& path, const char* key,
                                     bool required) {
        if (!obj.contains(key)) {
            if (required) {
                fail(path + "/" + key, "missing-field", "required field is absent");
            }
            return std::nullopt;
        }
        const json& v = obj.at(key);
        if (!v.is_number()) {
            fail(path + "/" + key, "invalid-type", "expected a number");
            return std::nullopt;
        }
        return v.get<double>();
    }

    std::optional<std::uint64_t> get_count(const json& obj, const std::string& path,
                                           const char* key, bool required) {
        if (!obj.contains(key)) {
            if (required) {
                fail(path + "/" + key, "missing-field", "required field is absent");
            }
            return std::nullopt;
        }
        const json& v = obj.at(key);
        if (!v.is_number_integer()) {
            fail(path + "/" + key, "invalid-type", "expected a nonnegative integer");
            return std::nullopt;
        }
        if (!v.is_number_unsigned() && v.get<std::int64_t>() < 0) {
            fail(path + "/" + key, "invalid-value", "expected a nonnegative integer");
            return std::nullopt;
        }
        return v.get<std::uint64_t>();
    }

    std::optional<double> probability_in(const json& obj, const std::string& path,
                                         const char* key, bool required) {
        auto v = get_number(obj, path, key, required);
        if (!v) {
            return std::nullopt;
        }
        if (std::isnan(*v) || *v < 0.0 || *v > 1.0) {
            fail(path + "/" + key, "invalid-value", "expected a probability in [0,1]");
            return std::nullopt;
        }
        return v;
    }

private:
    std::vector<Diagnostic>& diags_;
};

// Priors: {"odds": x} with x >= 0 or "inf", or {"probability": p}.
std::optional<Odds> parse_prior(Parser& p, const json& v, const std::string& path) {
    if (!v.is_object()) {
        p.fail(path, "invalid-type", "expected an object with 'odds' or 'probability'");
        return std::nullopt;
    }
    p.check_keys(v, path, {"odds", "probability"});
    if (v.contains("odds") == v.contains("probability")) {
        p.fail(path, "invalid-prior", "exactly one of 'odds' or 'probability' is required");
        return std::nullopt;
    }
    if (v.contains("odds")) {
        const json& o = v.at("odds");
        if (o.is_string()) {
            if (o.get<std::string>() != "inf") {
                p.fail(path + "/odds", "invalid-value", "the only string form is \"inf\"");
                return std::nullopt;
            }
            return Odds::infinite();
        }
        if (!o.is_number() || o.get<double>() < 0.0) {
            p.fail(path + "/odds", "invalid-value", "expected a nonnegative number or \"inf\"");
            return std::nullopt;
        }
        return Odds(o.get<double>());
    }
    auto prob = p.probability_in(v, path, "probability", true);
    if (!prob) {
        return std::nullopt;
    }
    return odds_from_probability(Probability(*prob));
}

// LRs: {"point": x|"inf"}, {"interval": [lo, hi]}, or
// {"from_probabilities": {"num": p, "den": p}}.
std::optional<LikelihoodRatio> parse_lr(Parser& p, const json& v, const std::string& path) {
    if (!v.is_object()) {
        p.fail(path, "invalid-type", "expected an LR object");
        return std::nullopt;
    }
    p.check_keys(v, path, {"point", "interval", "from_probabilities"});
    int forms = int(v.contains("point")) + int(v.contains("interval")) +
                int(v.contains("from_probabilities"));
    if (forms != 1) {
        p.fail(path, "invalid-lr",
               "exactly one of 'point', 'interval' or 'from_probabilities' is required");
        return std::nullopt;
    }
    if (v.contains("point")) {
        const json& x = v.at("point");
        if (x.is_string()) {
            if (x.get<std::string>() != "inf") {
                p.fail(path + "/point", "invalid-value", "the only string form is \"inf\"");
                return std::nullopt;
            }
            return LikelihoodRatio::point(std::numeric_limits<double>::infinity());
        }
        if (!x.is_number() || x.get<double>() < 0.0) {
            p.fail(path + "/point", "invalid-value", "expected a nonnegative number or \"inf\"");
            return std::nullopt;
        }
        return LikelihoodRatio::point(x.get<double>());
    }
    if (v.contains("interval")) {
        const json& arr = v.at("interval");
        if (!arr.is_array() || arr.size() != 2 || !arr[0].is_number() || !arr[1].is_number()) {
            p.fail(path + "/interval", "invalid-type", "expected [lo, hi]");
            return std::nullopt;
        }
        double lo = arr[0].get<double>();
        double hi = arr[1].get<double>();
        if (lo < 0.0 || lo > hi) {
            p.fail(path + "/interval", "invalid-value", "requires 0 <= lo <= hi");
            return std::nullopt;
        }
        return LikelihoodRatio::interval(lo, hi);
    }
    const json& fp = v.at("from_probabilities");
    if (!fp.is_object()) {
        p.fail(path + "/from_probabilities", "invalid-type", "expected an object");
        return std::nullopt;
    }
    p.check_keys(fp, path + "/from_probabilities", {"num", "den"});
    auto num = p.probability_in(fp, path + "/from_probabilities", "num", true);
    auto den = p.probability_in(fp, path + "/from_probabilities", "den", true);
    if (!num || !den) {
        return std::nullopt;
    }
    return likelihood_ratio(Probability(*num), Probability(*den));
}

std::optional<PartitionModel> parse_partition(Parser& p, const json& v, const std::string& path,
                                              const std::string& crime_type) {
    if (!v.is_object()) {
        p.fail(path, "invalid-type", "expected a partition object");
        return std::nullopt;
    }
    p.check_keys(v, path, {"profile_base_rate", "contexts"});
    auto base = p.probability_in(v, path, "profile_base_rate", true);
    const json* contexts = p.require(v, path, "contexts");
    if (!base || contexts == nullptr) {
        return std::nullopt;
    }
    if (!contexts->is_array() || contexts->empty()) {
        p.fail(path + "/contexts", "invalid-type", "expected a non-empty array of contexts");
        return std::nullopt;
    }
    std::vector<ContextCell> cells;
    std::unordered_set<std::string> labels;
    double weight_sum = 0.0;
    bool cells_ok = true;
    for (std::size_t i = 0; i < contexts->size(); ++i) {
        const json& c = (*contexts)[i];
        std::string cpath = path + "/contexts/" + std::to_string(i);
        if (!c.is_object()) {
            p.fail(cpath, "invalid-type", "expected a context object");
            cells_ok = false;
            continue;
        }
        p.check_keys(c, cpath, {"label", "weight", "prevalence"});
        auto label = p.get_string(c, cpath, "label", true);
        auto weight = p.get_number(c, cpath, "weight", true);
        auto prevalence = p.probability_in(c, cpath, "prevalence", true);
        if (!label || !weight || !prevalence) {
            cells_ok = false;
            continue;
        }
        if (*weight < 0.0) {
            p.fail(cpath + "/weight", "invalid-value", "weight must be nonnegative");
            cells_ok = false;
            continue;
        }
        if (!labels.insert(*label).second) {
            p.fail(cpath + "/label", "duplicate-label",
                   "context label '" + *label + "' appears more than once");
            cells_ok = false;
            continue;
        }
        weight_sum += *weight;
        cells.push_back(ContextCell{*label, *weight, *prevalence});
    }
    if (!cells_ok) {
        return std::nullopt;
    }
    if (std::abs(weight_sum - 1.0) > 1e-9) {
        std::ostringstream msg;
        msg << "context weights sum to " << weight_sum << ", expected 1";
        p.fail(path + "/contexts", "weights-sum", msg.str());
        return std::nullopt;
    }
    return PartitionModel(crime_type, std::move(cells), Probability(*base));
}

std::optional<EvidenceItem> parse_evidence_item(Parser& p, const json& v, const std::string& path,
                                                bool allow_profiling_on_specific,
                                                std::map<std::string, std::string>& annotations) {
    if (!v.is_object()) {
        p.fail(path, "invalid-type", "expected an evidence object");
        return std::nullopt;
    }
    p.check_keys(v, path, {"label", "kind", "target_level", "context", "lr", "annotation"});
    auto label = p.get_string(v, path, "label", true);
    auto kind_str = p.get_string(v, path, "kind", true);
    auto target_str = p.get_string(v, path, "target_level", true);
    if (!label || !kind_str || !target_str) {
        return std::nullopt;
    }
    EvidenceItem item;
    item.label = *label;
    if (*kind_str == "profiling") {
        item.kind = EvidenceKind::Profiling;
    } else if (*kind_str == "case_specific") {
        item.kind = EvidenceKind::CaseSpecific;
    } else {
        p.fail(path + "/kind", "invalid-value", "expected 'profiling' or 'case_specific'");
        return std::nullopt;
    }
    if (*target_str == "generic") {
        if (v.contains("context")) {
            p.fail(path + "/context", "invalid-value", "generic targets carry no context");
            return std::nullopt;
        }
        item.target = HypothesisLevel::generic();
    } else if (*target_str == "specific") {
        auto context = p.get_string(v, path, "context", false);
        item.target = context.has_value() ? HypothesisLevel::specific(*context)
                                          : HypothesisLevel::specific_unknown();
    } else {
        p.fail(path + "/target_level", "invalid-value", "expected 'generic' or 'specific'");
        return std::nullopt;
    }

    bool profiling_specific = item.kind == EvidenceKind::Profiling && item.target.is_specific();
    if (profiling_specific && !allow_profiling_on_specific) {
        p.fail(path, "profiling-level",
               "profiling evidence targets the specific level; set "
               "allow_profiling_on_specific to reproduce that computation deliberately");
        return std::nullopt;
    }
    if (profiling_specific) {
        if (v.contains("lr")) {
            p.fail(path + "/lr", "profiling-specific-lr",
                   "the specific-level LR of profiling evidence is derived from the "
                   "partition and must not be declared");
            return std::nullopt;
        }
    } else {
        const json* lr = p.require(v, path, "lr");
        if (lr == nullptr) {
            return std::nullopt;
        }
        auto parsed = parse_lr(p, *lr, path + "/lr");
        if (!parsed) {
            return std::nullopt;
        }
        item.lr = *parsed;
    }
    if (auto note = p.get_string(v, path, "annotation", false)) {
        annotations["item:" + item.label] = *note;
    }
    return item;
}

std::optional<SimulationConfig> parse_simulation(Parser& p, const json& v,
                                                 const std::string& path,
                                                 const std::optional<PartitionModel>& partition,
                                                 bool& has_seed) {
    if (!v.is_object()) {
        p.fail(path, "invalid-type", "expected a simulation object");
        return std::nullopt;
    }
    p.check_keys(v, path,
                 {"population_size", "crime_rate", "replications", "seed", "designated_context",
                  "non_offender_profile_rate"});
    if (!partition.has_value()) {
        p.fail(path, "partition-required", "simulation needs the scenario's partition");
        return std::nullopt;
    }
    auto population = p.get_count(v, path, "population_size", true);
    auto crime_rate = p.get_number(v, path, "crime_rate", true);
    auto replications = p.get_count(v, path, "replications", false);
    auto seed = p.get_count(v, path, "seed", false);
    auto designated = p.get_string(v, path, "designated_context", false);
    auto non_offender = p.probability_in(v, path, "non_offender_profile_rate", false);
    if (!population || !crime_rate) {
        return std::nullopt;
    }
    if (*population < 1) {
        p.fail(path + "/population_size", "invalid-value", "must be at least 1");
        return std::nullopt;
    }
    if (!(*crime_rate > 0.0) || !(*crime_rate < 1.0)) {
        p.fail(path + "/crime_rate", "invalid-value", "must lie strictly between 0 and 1");
        return std::nullopt;
    }
    if (replications.has_value() && *replications < 1) {
        p.fail(path + "/replications", "invalid-value", "must be at least 1");
        return std::nullopt;
    }
    if (designated.has_value() && partition->find(*designated) == nullptr) {
        p.fail(path + "/designated_context", "no-such-context",
               "no context labelled '" + *designated + "'");
        return std::nullopt;
    }
    has_seed = seed.has_value();
    return SimulationConfig{*population,
                            *crime_rate,
                            *partition,
                            seed.value_or(0),
                            replications.value_or(1),
                            designated,
                            non_offender};
}

void parse_annotations(Parser& p, const json& v, const std::string& path,
                       std::map<std::string, std::string>& out) {
    if (!v.is_object()) {
        p.fail(path, "invalid-type", "expected an object of display annotations");
        return;
    }
    for (const auto& [key, value] : v.items()) {
        if (!value.is_string() || value.get<std::string>().empty()) {
            p.fail(path + "/" + key, "invalid-value", "annotation must be a non-empty string");
            continue;
        }
        out[key] = value.get<std::string>();
    }
}

// Mirrors check_scenario but reports every violation instead of throwing on
// the first, so `validate` can list them all.
void collect_scenario_diagnostics(Parser& p, const Scenario& s, const std::string& path) {
    std::unordered_set<std::string_view> labels;
    for (std::size_t i = 0; i < s.evidence.size(); ++i) {
        const auto& item = s.evidence[i];
        std::string ipath = path + "/evidence/" + std::to_string(i);
        if (!labels.insert(item.label).second) {
            p.fail(ipath + "/label", "duplicate-evidence-label",
                   "evidence label '" + item.label + "' appears more than once");
        }
        if (item.target.is_specific() && item.target.context_known() && s.partition.has_value() &&
            s.partition->find(item.target.context()) == nullptr) {
            p.fail(ipath + "/context", "no-such-context",
                   "no context labelled '" + item.target.context() + "'");
        }
        if (item.kind == EvidenceKind::Profiling && item.target.is_specific() &&
            !s.partition.has_value()) {
            p.fail(ipath, "partition-required",
                   "profiling evidence on the specific level needs a partition");
        }
    }
}

} // namespace

LoadResult parse_scenario_text(const std::string& text) {
    LoadResult result;
    Parser p(result.diagnostics);

    json root;
    try {
        root = json::parse(text); // parse_error messages carry line and column
    } catch (const json::parse_error& e) {
        p.fail("/", "malformed-json", e.what());
        return result;
    }
    if (!root.is_object()) {
        p.fail("/", "invalid-type", "expected a top-level object");
        return result;
    }
    p.check_keys(root, "", {"schema_version", "scenario", "simulation"});

    auto version = p.get_string(root, "", "schema_version", true);
    if (version && *version != kSupportedSchemaVersion) {
        p.fail("/schema_version", "unsupported-schema-version",
               "supported version is \"" + std::string(kSupportedSchemaVersion) + "\"");
    }

    const json* sc = p.require(root, "", "scenario");
    if (sc == nullptr || !sc->is_object()) {
        if (sc != nullptr) {
            p.fail("/scenario", "invalid-type", "expected an object");
        }
        return result;
    }
    const std::string spath = "/scenario";
    p.check_keys(*sc, spath,
                 {"crime_type", "independence_assumed", "prior_generic", "prior_specific",
                  "allow_profiling_on_specific", "partition", "evidence", "annotations"});

    ScenarioFile file;
    file.schema_version = version.value_or("");

    auto crime_type = p.get_string(*sc, spath, "crime_type", true);
    file.scenario.crime_type = crime_type.value_or("");

    auto independence = p.get_bool(*sc, spath, "independence_assumed", true);
    if (independence.has_value() && !*independence) {
        p.fail(spath + "/independence_assumed", "independence-not-acknowledged",
               "combining evidence multiplies LRs; the file must assert independence");
    }
    file.scenario.independence_assumed = independence.value_or(false);

    if (auto allow = p.get_bool(*sc, spath, "allow_profiling_on_specific", false)) {
        file.scenario.allow_profiling_on_specific = *allow;
    }

    if (const json* prior = p.require(*sc, spath, "prior_generic")) {
        if (auto odds = parse_prior(p, *prior, spath + "/prior_generic")) {
            file.scenario.prior_generic = *odds;
        }
    }
    if (const json* prior = p.require(*sc, spath, "prior_specific")) {
        if (auto odds = parse_prior(p, *prior, spath + "/prior_specific")) {
            file.scenario.prior_specific = *odds;
        }
    }

    if (sc->contains("partition")) {
        if (auto partition = parse_partition(p, sc->at("partition"), spath + "/partition",
                                             file.scenario.crime_type)) {
            file.scenario.partition = std::move(*partition);
        }
    }

    if (const json* evidence = p.require(*sc, spath, "evidence")) {
        if (!evidence->is_array()) {
            p.fail(spath + "/evidence", "invalid-type", "expected an array");
        } else {
            for (std::size_t i = 0; i < evidence->size(); ++i) {
                if (auto item = parse_evidence_item(
                        p, (*evidence)[i], spath + "/evidence/" + std::to_string(i),
                        file.scenario.allow_profiling_on_specific, file.annotations)) {
                    file.scenario.evidence.push_back(std::move(*item));
                }
            }
        }
    }

    if (sc->contains("annotations")) {
        parse_annotations(p, sc->at("annotations"), spath + "/annotations", file.annotations);
    }

    collect_scenario_diagnostics(p, file.scenario, spath);

    if (root.contains("simulation")) {
        if (auto sim = parse_simulation(p, root.at("simulation"), "/simulation",
                                        file.scenario.partition, file.simulation_has_seed)) {
            file.simulation = std::move(*sim);
        }
    }

    if (p.clean()) {
        result.file = std::move(file);
    }
    return result;
}

LoadResult load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        LoadResult result;
        result.diagnostics.push_back({"/", "unreadable-file", "cannot open '" + path + "'"});
        return result;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario_text(buffer.str());
}

} // namespace evidentia
