#include "priorisk/config.hpp"

#include <stdexcept>

namespace priorisk {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

Config parse_config(const std::string& text) {
    Config cfg;
    std::string section;
    std::string line;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) {
            line = text.substr(pos);
            pos = text.size() + 1;
        } else {
            line = text.substr(pos, nl - pos);
            pos = nl + 1;
        }
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[' && t.back() == ']') {
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        size_t eq = t.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad config line: " + line);
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        if (key.empty()) throw std::invalid_argument("empty config key");
        cfg[section.empty() ? key : section + "." + key] = val;
    }
    return cfg;
}

std::string serialize_config(const Config& cfg) {
    // Unsectioned keys first (a [section] header captures everything below
    // it), then dotted keys grouped under their headers. std::map order keeps
    // the output deterministic.
    std::string out;
    for (const auto& [key, val] : cfg)
        if (key.find('.') == std::string::npos) out += key + " = " + val + "\n";
    std::string section;
    for (const auto& [key, val] : cfg) {
        size_t dot = key.find('.');
        if (dot == std::string::npos) continue;
        std::string sec = key.substr(0, dot);
        if (sec != section) {
            if (!out.empty()) out += '\n';
            out += "[" + sec + "]\n";
            section = sec;
        }
        out += key.substr(dot + 1) + " = " + val + "\n";
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        size_t pos = 0;
        int v = std::stoi(cur, &pos);
        if (pos != cur.size()) throw std::invalid_argument("bad integer: " + cur);
        out.push_back(v);
        cur.clear();
    };
    for (char ch : csv) {
        if (ch == ',') flush();
        else if (ch != ' ') cur += ch;
    }
    flush();
    if (out.empty()) throw std::invalid_argument("empty integer list");
    return out;
}

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        size_t pos = 0;
        double v = std::stod(cur, &pos);
        if (pos != cur.size()) throw std::invalid_argument("bad number: " + cur);
        out.push_back(v);
        cur.clear();
    };
    for (char ch : csv) {
        if (ch == ',') flush();
        else if (ch != ' ') cur += ch;
    }
    flush();
    if (out.empty()) throw std::invalid_argument("empty number list");
    return out;
}

std::string join_ints(const std::vector<int>& xs) {
    std::string out;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(xs[i]);
    }
    return out;
}

}  // namespace priorisk
