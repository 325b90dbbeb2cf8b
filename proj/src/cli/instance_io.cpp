#include "dfds/cli.hpp"

#include <json.hpp>

#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace dfds::cli {

namespace {

using nlohmann::json;

const char* kind_name(InstanceKind k)
{
    return k == InstanceKind::Curve ? "curve" : "point_sequence";
}

const char* payload_key(InstanceKind k)
{
    return k == InstanceKind::Curve ? "vertices" : "points";
}

Point checked_point(double x, double y)
{
    if (!std::isfinite(x) || !std::isfinite(y))
        throw InputError("non-finite coordinate");
    return {x, y};
}

void validate(const InstanceFile& inst)
{
    if (inst.kind == InstanceKind::Curve) {
        if (inst.points.size() < 2)
            throw InputError("a curve needs at least two vertices");
        for (std::size_t k = 1; k < inst.points.size(); ++k) {
            if (inst.points[k] == inst.points[k - 1])
                throw InputError("curve edge " + std::to_string(k - 1) + " has zero length");
        }
    } else if (inst.points.empty()) {
        throw InputError("a point sequence needs at least one point");
    }
}

InstanceFile parse_json(const std::string& text, InstanceKind expected)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string())
        throw InputError("JSON instance needs a string field \"kind\"");
    const std::string kind = doc["kind"].get<std::string>();
    if (kind != kind_name(expected))
        throw InputError("expected kind \"" + std::string(kind_name(expected)) + "\", got \"" +
                         kind + "\"");
    InstanceFile inst;
    inst.kind = expected;
    const char* key = payload_key(expected);
    if (!doc.contains(key) || !doc[key].is_array())
        throw InputError(std::string("JSON instance needs an array \"") + key + "\"");
    for (const json& p : doc[key]) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw InputError("each point must be [x, y]");
        inst.points.push_back(checked_point(p[0].get<double>(), p[1].get<double>()));
    }
    if (doc.contains("outliers")) {
        inst.has_outliers = true;
        for (const json& k : doc["outliers"])
            inst.outliers.push_back(k.get<int>());
    }
    return inst;
}

// "# outliers: i j k" records the outlier indices; other comments are ignored.
void read_outlier_comment(const std::string& body, InstanceFile& inst, std::size_t lineno)
{
    std::istringstream in(body);
    std::string tag;
    if (!(in >> tag) || tag != "outliers:")
        return;
    inst.has_outliers = true;
    int k = 0;
    while (in >> k)
        inst.outliers.push_back(k);
    if (!in.eof())
        throw InputError("line " + std::to_string(lineno) + ": bad outlier index");
}

InstanceFile parse_csv(const std::string& text, InstanceKind expected)
{
    InstanceFile inst;
    inst.kind = expected;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            continue;
        if (line[first] == '#') {
            read_outlier_comment(line.substr(first + 1), inst, lineno);
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw InputError("line " + std::to_string(lineno) + ": expected x,y");
        try {
            std::size_t used = 0;
            const double x = std::stod(line.substr(0, comma));
            const std::string rest = line.substr(comma + 1);
            const double y = std::stod(rest, &used);
            if (rest.find_first_not_of(" \t\r", used) != std::string::npos)
                throw InputError("line " + std::to_string(lineno) + ": trailing characters");
            inst.points.push_back(checked_point(x, y));
        } catch (const std::logic_error&) {
            throw InputError("line " + std::to_string(lineno) + ": expected x,y");
        }
    }
    return inst;
}

} // namespace

InstanceFile parse_instance(const std::string& text, InstanceKind expected)
{
    const auto first = text.find_first_not_of(" \t\r\n");
    InstanceFile inst = first != std::string::npos && text[first] == '{'
                            ? parse_json(text, expected)
                            : parse_csv(text, expected);
    validate(inst);
    return inst;
}

InstanceFile load_instance(const std::string& path, InstanceKind expected)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_instance(buf.str(), expected);
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::string format_instance(const InstanceFile& inst, bool csv)
{
    if (csv) {
        std::ostringstream out;
        out << std::setprecision(17);
        if (inst.has_outliers || !inst.outliers.empty()) {
            out << "# outliers:";
            for (int k : inst.outliers)
                out << ' ' << k;
            out << '\n';
        }
        for (const Point& p : inst.points)
            out << p.x << ',' << p.y << '\n';
        return out.str();
    }
    json doc;
    doc["kind"] = kind_name(inst.kind);
    json pts = json::array();
    for (const Point& p : inst.points)
        pts.push_back({p.x, p.y});
    doc[payload_key(inst.kind)] = std::move(pts);
    if (inst.has_outliers || !inst.outliers.empty())
        doc["outliers"] = inst.outliers;
    return doc.dump() + "\n";
}

void save_instance(const std::string& path, const InstanceFile& inst, bool csv)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write " + path);
    out << format_instance(inst, csv);
}

} // namespace dfds::cli
