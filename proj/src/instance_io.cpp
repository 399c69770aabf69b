#include "segconn/instance_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace segconn {

namespace {

using nlohmann::json;

Point read_point(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw std::runtime_error(std::string(what) + " must be a pair of numbers");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

double read_number(const json& obj, const char* key) {
    if (!obj.contains(key) || !obj[key].is_number()) {
        throw std::runtime_error(std::string("segment field '") + key + "' must be a number");
    }
    return obj[key].get<double>();
}

ParamSegment read_segment(const json& j) {
    if (!j.is_object()) {
        throw std::runtime_error("segment must be an object");
    }
    try {
        if (j.contains("from") || j.contains("to")) {
            if (!j.contains("from") || !j.contains("to")) {
                throw std::runtime_error("segment needs both 'from' and 'to'");
            }
            return ParamSegment::from_endpoints(read_point(j["from"], "from"), read_point(j["to"], "to"));
        }
        if (!j.contains("p") || !j.contains("e")) {
            throw std::runtime_error("segment needs 'from'/'to' or 'p'/'e'/'a'/'b'");
        }
        return ParamSegment::make(read_point(j["p"], "p"), read_point(j["e"], "e"), read_number(j, "a"),
                                  read_number(j, "b"));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(e.what());
    }
}

json point_json(Point p) { return json::array({p.x, p.y}); }

}  // namespace

Instance parse_instance(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw std::runtime_error("instance must be a JSON object");
    }
    Instance inst;
    if (doc.contains("segments")) {
        if (!doc["segments"].is_array()) {
            throw std::runtime_error("'segments' must be an array");
        }
        for (const json& s : doc["segments"]) {
            inst.segments.push_back(read_segment(s));
        }
    }
    if (!doc.contains("points") || !doc["points"].is_array()) {
        throw std::runtime_error("'points' must be an array");
    }
    for (const json& p : doc["points"]) {
        inst.points.push_back(read_point(p, "point"));
    }
    try {
        validate(inst);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(e.what());
    }
    return inst;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

std::string serialize_instance(const Instance& instance) {
    json doc;
    doc["segments"] = json::array();
    for (const ParamSegment& s : instance.segments) {
        doc["segments"].push_back({{"p", point_json(s.anchor)}, {"e", point_json(s.dir)}, {"a", s.lo}, {"b", s.hi}});
    }
    doc["points"] = json::array();
    for (const Point& p : instance.points) {
        doc["points"].push_back(point_json(p));
    }
    return doc.dump(2) + "\n";
}

}  // namespace segconn
