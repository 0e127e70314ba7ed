#include "turnpike/io.hpp"

#include "turnpike/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace turnpike {
namespace {

using Json = nlohmann::ordered_json;

const Json& field(const Json& obj, const std::string& key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw InputError(where + ": missing field \"" + key + "\"");
    return *it;
}

std::string string_at(const Json& j, const std::string& where) {
    if (!j.is_string()) throw InputError(where + ": expected a string");
    return j.get<std::string>();
}

Rational rational_at(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) throw InputError(where + ": expected a rational string such as \"1/2\"");
    try {
        return parse_rational(j.get<std::string>(), false);
    } catch (const InputError& e) {
        throw InputError(where + ": " + e.what());
    }
}

std::string key(const Mdp& mdp, std::size_t x, std::size_t a) {
    return mdp.states[x] + "/" + mdp.actions[x][a];
}

}  // namespace

Mdp parse_mdp_document(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw InputError("document: expected a JSON object");

    const Json& version = field(doc, "format_version", "document");
    if (!version.is_number_integer() || version.get<int>() != kFormatVersion)
        throw InputError("format_version: expected " + std::to_string(kFormatVersion));
    for (const auto& [k, v] : doc.items()) {
        static const std::set<std::string> known{"format_version", "states",  "actions",
                                                 "transitions",    "rewards", "terminal"};
        if (!known.count(k)) throw InputError("document: unknown field \"" + k + "\"");
    }

    Mdp mdp;
    const Json& states = field(doc, "states", "document");
    if (!states.is_array() || states.empty()) throw InputError("states: expected a nonempty list");
    for (std::size_t i = 0; i < states.size(); ++i)
        mdp.states.push_back(string_at(states[i], "states[" + std::to_string(i) + "]"));
    for (const auto& s : mdp.states)
        if (s.find('/') != std::string::npos) throw InputError("states: identifier \"" + s + "\" contains '/'");
    if (std::set<std::string>(mdp.states.begin(), mdp.states.end()).size() != mdp.states.size())
        throw InputError("states: duplicate state identifier");
    const std::size_t m = mdp.states.size();

    const Json& actions = field(doc, "actions", "document");
    if (!actions.is_object()) throw InputError("actions: expected an object keyed by state");
    if (actions.size() != m) throw InputError("actions: expected one entry per state");
    for (const auto& s : mdp.states) {
        const Json& list = field(actions, s, "actions");
        if (!list.is_array() || list.empty()) throw InputError("actions." + s + ": expected a nonempty list");
        std::vector<std::string> ids;
        for (std::size_t i = 0; i < list.size(); ++i)
            ids.push_back(string_at(list[i], "actions." + s + "[" + std::to_string(i) + "]"));
        if (std::set<std::string>(ids.begin(), ids.end()).size() != ids.size())
            throw InputError("actions." + s + ": duplicate action identifier");
        mdp.actions.push_back(std::move(ids));
    }

    const Json& transitions = field(doc, "transitions", "document");
    const Json& rewards = field(doc, "rewards", "document");
    if (!transitions.is_object()) throw InputError("transitions: expected an object keyed by \"state/action\"");
    if (!rewards.is_object()) throw InputError("rewards: expected an object keyed by \"state/action\"");
    std::size_t pairs = 0;
    mdp.transition.resize(m);
    mdp.reward.resize(m);
    for (std::size_t x = 0; x < m; ++x) {
        for (std::size_t a = 0; a < mdp.num_actions(x); ++a, ++pairs) {
            const std::string k = key(mdp, x, a);
            const Json& row = field(transitions, k, "transitions");
            if (!row.is_array() || row.size() != m)
                throw InputError("transitions." + k + ": expected " + std::to_string(m) + " probabilities");
            RationalVector p;
            for (std::size_t y = 0; y < m; ++y)
                p.push_back(rational_at(row[y], "transitions." + k + "[" + std::to_string(y) + "]"));
            mdp.transition[x].push_back(std::move(p));
            mdp.reward[x].push_back(rational_at(field(rewards, k, "rewards"), "rewards." + k));
        }
    }
    if (transitions.size() != pairs) throw InputError("transitions: entries for unknown state/action pairs");
    if (rewards.size() != pairs) throw InputError("rewards: entries for unknown state/action pairs");

    const Json& terminal = field(doc, "terminal", "document");
    if (!terminal.is_array() || terminal.size() != m)
        throw InputError("terminal: expected " + std::to_string(m) + " rationals");
    for (std::size_t x = 0; x < m; ++x)
        mdp.terminal.push_back(rational_at(terminal[x], "terminal[" + std::to_string(x) + "]"));

    require_valid(mdp);
    return mdp;
}

Mdp load_mdp_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_mdp_document(buf.str());
}

std::string serialize_mdp(const Mdp& mdp) {
    Json doc;
    doc["format_version"] = kFormatVersion;
    doc["states"] = mdp.states;
    Json actions = Json::object();
    Json transitions = Json::object();
    Json rewards = Json::object();
    Json terminal = Json::array();
    for (std::size_t x = 0; x < mdp.num_states(); ++x) {
        actions[mdp.states[x]] = mdp.actions[x];
        for (std::size_t a = 0; a < mdp.num_actions(x); ++a) {
            Json row = Json::array();
            for (const auto& p : mdp.transition[x][a]) row.push_back(to_string(p));
            transitions[key(mdp, x, a)] = std::move(row);
            rewards[key(mdp, x, a)] = to_string(mdp.reward[x][a]);
        }
        terminal.push_back(to_string(mdp.terminal[x]));
    }
    doc["actions"] = std::move(actions);
    doc["transitions"] = std::move(transitions);
    doc["rewards"] = std::move(rewards);
    doc["terminal"] = std::move(terminal);
    return doc.dump(2) + "\n";
}

}  // namespace turnpike
