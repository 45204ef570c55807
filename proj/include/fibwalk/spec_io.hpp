#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fibwalk/errors.hpp"
#include "fibwalk/walk_spec.hpp"

namespace fibwalk {

/// On-disk form of a walk specification. Mirrors WalkSpec plus the optional
/// presentation fields a file may carry.
struct SpecDocument {
    std::optional<std::string> name;
    std::vector<double> p, q, r, s;
    std::optional<int> start;
    double ghost_left = 1.0;
    double ghost_right = 1.0;

    bool operator==(const SpecDocument&) const = default;
};

namespace detail {

inline std::vector<double> number_list(const nlohmann::json& j,
                                       const std::string& key) {
    const auto it = j.find(key);
    if (it == j.end())
        throw validation_error("spec document: missing required key \"" + key +
                               "\"");
    if (!it->is_array())
        throw validation_error("spec document: \"" + key +
                               "\" must be a list of numbers");
    std::vector<double> out;
    out.reserve(it->size());
    for (const auto& v : *it) {
        if (!v.is_number())
            throw validation_error("spec document: \"" + key +
                                   "\" must contain only numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

}  // namespace detail

inline SpecDocument parse_spec_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw validation_error(std::string("spec document: ") + e.what());
    }
    if (!j.is_object())
        throw validation_error("spec document: top level must be an object");

    static const char* known[] = {"name", "p",     "q",          "r",
                                  "s",    "start", "ghost_left", "ghost_right"};
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok)
            throw validation_error("spec document: unknown key \"" + key +
                                   "\"");
    }

    SpecDocument doc;
    doc.p = detail::number_list(j, "p");
    doc.q = detail::number_list(j, "q");
    doc.r = detail::number_list(j, "r");
    doc.s = detail::number_list(j, "s");
    const std::size_t n = doc.p.size();
    for (const char* key : {"q", "r", "s"}) {
        const std::size_t len = key[0] == 'q'   ? doc.q.size()
                                : key[0] == 'r' ? doc.r.size()
                                                : doc.s.size();
        if (len != n)
            throw validation_error(
                "spec document: length mismatch in \"" + std::string(key) +
                "\" (" + std::to_string(len) + " entries, expected " +
                std::to_string(n) + ")");
    }
    if (n == 0) throw validation_error("spec document: lists must be non-empty");

    if (auto it = j.find("name"); it != j.end()) {
        if (!it->is_string())
            throw validation_error("spec document: \"name\" must be a string");
        doc.name = it->get<std::string>();
    }
    if (auto it = j.find("start"); it != j.end()) {
        if (!it->is_number_integer())
            throw validation_error("spec document: \"start\" must be an integer");
        doc.start = it->get<int>();
    }
    for (const char* key : {"ghost_left", "ghost_right"}) {
        if (auto it = j.find(key); it != j.end()) {
            if (!it->is_number())
                throw validation_error("spec document: \"" + std::string(key) +
                                       "\" must be a number");
            (key[6] == 'l' ? doc.ghost_left : doc.ghost_right) =
                it->get<double>();
        }
    }
    return doc;
}

inline SpecDocument parse_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw validation_error("cannot open spec file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec_text(buf.str());
}

inline std::string serialize(const SpecDocument& doc) {
    nlohmann::json j;
    if (doc.name) j["name"] = *doc.name;
    j["p"] = doc.p;
    j["q"] = doc.q;
    j["r"] = doc.r;
    j["s"] = doc.s;
    if (doc.start) j["start"] = *doc.start;
    j["ghost_left"] = doc.ghost_left;
    j["ghost_right"] = doc.ghost_right;
    return j.dump(2) + "\n";
}

inline WalkSpec to_walk_spec(const SpecDocument& doc) {
    WalkSpec w;
    w.p = doc.p;
    w.q = doc.q;
    w.r = doc.r;
    w.s = doc.s;
    w.start = doc.start.value_or(0);
    w.ghost_left = doc.ghost_left;
    w.ghost_right = doc.ghost_right;
    return validate(w);
}

}  // namespace fibwalk
