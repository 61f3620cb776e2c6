#include "pqa/corpus.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "pqa/errors.hpp"

namespace pqa {

using nlohmann::json;

const std::string& role_label(OptionRole role) {
    static const std::string labels[] = {"competitor", "similar", "unrelated"};
    return labels[static_cast<int>(role)];
}

OptionRole role_from_label(const std::string& label) {
    for (int i = 0; i <= static_cast<int>(OptionRole::Unrelated); ++i)
        if (role_label(static_cast<OptionRole>(i)) == label)
            return static_cast<OptionRole>(i);
    throw CorpusError("unknown option role: " + label);
}

const OptionId& Vignette::option_named(OptionRole role) const {
    for (const auto& option : options)
        if (option.role == role) return option.name;
    throw CorpusError("vignette " + id + " lacks a " + role_label(role) + " option");
}

std::vector<OptionId> Vignette::alternative_names() const {
    return {option_named(OptionRole::Competitor), option_named(OptionRole::Similar),
            option_named(OptionRole::Unrelated)};
}

std::vector<OptionId> Vignette::all_items() const {
    std::vector<OptionId> items{target};
    const auto alternatives = alternative_names();
    items.insert(items.end(), alternatives.begin(), alternatives.end());
    return items;
}

WorldState Vignette::actual_world() const {
    WorldState w;
    for (const auto& option : options) w.available.insert(option.name);
    return w;
}

Question Vignette::observed_question() const {
    return Question::polar(target, question_text);
}

void Vignette::validate() const {
    const auto fail = [this](const std::string& field, const std::string& why) {
        throw CorpusError("vignette '" + id + "', field '" + field + "': " + why);
    };
    if (id.empty()) throw CorpusError("vignette with empty id");
    if (context.empty()) fail("context", "must be non-empty");
    if (question_text.empty()) fail("question", "must be non-empty");
    if (target.empty()) fail("target", "must be non-empty");
    if (options.size() != 3) fail("options", "exactly three options required");

    std::set<std::string> roles_seen;
    std::set<std::string> names_seen;
    for (const auto& option : options) {
        if (option.name.empty()) fail("options", "option with empty name");
        if (!roles_seen.insert(role_label(option.role)).second)
            fail("options", "duplicate role '" + role_label(option.role) + "'");
        if (!names_seen.insert(option.name).second)
            fail("options", "duplicate name '" + option.name + "'");
        if (option.name == target)
            fail("options", "target must not be listed among the options");
    }
    if (source != "bundled" && source != "external")
        fail("source", "must be 'bundled' or 'external'");
}

namespace {

Vignette vignette_from_json(const json& j, std::size_t index) {
    const auto where = [&](const std::string& field) {
        return "vignette #" + std::to_string(index) + ", field '" + field + "'";
    };
    const auto need_string = [&](const std::string& field) -> std::string {
        if (!j.contains(field) || !j[field].is_string())
            throw CorpusError(where(field) + ": missing or not a string");
        return j[field].get<std::string>();
    };

    Vignette v;
    v.id = need_string("id");
    v.context = need_string("context");
    v.setting = j.value("setting", v.context);
    v.question_text = need_string("question");
    v.target = need_string("target");
    v.source = j.value("source", std::string("bundled"));

    if (!j.contains("options") || !j["options"].is_array())
        throw CorpusError(where("options") + ": missing or not an array");
    for (const auto& jo : j["options"]) {
        if (!jo.is_object() || !jo.contains("role") || !jo.contains("name"))
            throw CorpusError(where("options") + ": each option needs 'role' and 'name'");
        VignetteOption option;
        option.role = role_from_label(jo["role"].get<std::string>());
        option.name = jo["name"].get<std::string>();
        v.options.push_back(std::move(option));
    }
    v.validate();
    return v;
}

json vignette_to_json(const Vignette& v) {
    json j;
    j["id"] = v.id;
    j["context"] = v.context;
    j["setting"] = v.setting;
    j["question"] = v.question_text;
    j["target"] = v.target;
    j["source"] = v.source;
    j["options"] = json::array();
    for (const auto& option : v.options)
        j["options"].push_back({{"role", role_label(option.role)}, {"name", option.name}});
    return j;
}

} // namespace

std::vector<Vignette> load_vignettes(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw CorpusError("cannot open corpus file: " + path.string());

    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw CorpusError("corpus file " + path.string() + ": " + e.what());
    }
    if (!doc.is_array())
        throw CorpusError("corpus file " + path.string() + ": top level must be an array");
    if (doc.empty())
        throw CorpusError("corpus file " + path.string() + ": no vignettes");

    std::vector<Vignette> vignettes;
    std::set<std::string> ids;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        Vignette v = vignette_from_json(doc[i], i);
        if (!ids.insert(v.id).second)
            throw CorpusError("duplicate vignette id: " + v.id);
        vignettes.push_back(std::move(v));
    }
    return vignettes;
}

std::string serialize_vignettes(const std::vector<Vignette>& vignettes) {
    json doc = json::array();
    for (const auto& v : vignettes) doc.push_back(vignette_to_json(v));
    return doc.dump(2) + "\n";
}

HumanReference human_reference() {
    HumanReference ref;
    ref.proportions.resize(5);
    // no-options, competitor, similar, unrelated, all-options
    ref.proportions << 0.20, 0.52, 0.18, 0.00, 0.10;
    return ref;
}

void UtilityTable::add(const std::string& goal_key, const OptionId& option, double rating) {
    if (rating < 0.0 || rating > 100.0)
        throw CorpusError("utility rating out of [0,100]: " + std::to_string(rating));
    samples_[{goal_key, option}].push_back(rating);
}

bool UtilityTable::has(const std::string& goal_key, const OptionId& option) const {
    return samples_.count({goal_key, option}) > 0;
}

double UtilityTable::rate(const std::string& goal_key, const OptionId& option) const {
    const auto it = samples_.find({goal_key, option});
    if (it == samples_.end())
        throw CorpusError("unelicited pair: (" + goal_key + ", " + option + ")");
    double total = 0.0;
    for (double x : it->second) total += x;
    return total / static_cast<double>(it->second.size());
}

const std::vector<double>& UtilityTable::samples(const std::string& goal_key,
                                                 const OptionId& option) const {
    const auto it = samples_.find({goal_key, option});
    if (it == samples_.end())
        throw CorpusError("unelicited pair: (" + goal_key + ", " + option + ")");
    return it->second;
}

UtilityTable UtilityTable::load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw CorpusError("cannot open utility table: " + path.string());

    UtilityTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1) {
            if (line != "goal,option,rating")
                throw CorpusError(path.string() + ":1: expected header 'goal,option,rating'");
            continue;
        }
        std::istringstream row(line);
        std::string goal, option, rating;
        if (!std::getline(row, goal, ',') || !std::getline(row, option, ',') ||
            !std::getline(row, rating))
            throw CorpusError(path.string() + ":" + std::to_string(line_no) +
                              ": expected 'goal,option,rating'");
        try {
            table.add(goal, option, std::stod(rating));
        } catch (const CorpusError&) {
            throw CorpusError(path.string() + ":" + std::to_string(line_no) +
                              ": rating out of [0,100]");
        } catch (const std::exception&) {
            throw CorpusError(path.string() + ":" + std::to_string(line_no) +
                              ": rating is not a number");
        }
    }
    if (table.size() == 0)
        throw CorpusError(path.string() + ": empty utility table");
    return table;
}

} // namespace pqa
