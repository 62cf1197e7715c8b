#include "nav3d/scenario.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nav3d/errors.hpp"

namespace nav3d {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw ScenarioError("scenario: " + where + ": " + what);
}

const json& field(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.is_object()) bad(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) bad(where, "missing required field '" + key + "'");
    return *it;
}

double number(const json& value, const std::string& where) {
    if (!value.is_number()) bad(where, "expected a number");
    return value.get<double>();
}

double number_field(const json& obj, const std::string& key, const std::string& where) {
    return number(field(obj, key, where), where + "." + key);
}

double number_or(const json& obj, const std::string& key, double fallback,
                 const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) return fallback;
    return number(obj.at(key), where + "." + key);
}

Vec3 vec3(const json& value, const std::string& where) {
    if (!value.is_array() || value.size() != 3) bad(where, "expected an array of 3 numbers");
    return {number(value[0], where), number(value[1], where), number(value[2], where)};
}

ConvexShape parse_shape(const json& obj, const std::string& where) {
    const std::string type = field(obj, "type", where).get<std::string>();
    if (type == "sphere") {
        Sphere s{vec3(field(obj, "center", where), where + ".center"),
                 number_field(obj, "radius", where)};
        if (!(s.radius > 0.0)) bad(where, "sphere radius must be positive");
        return s;
    }
    if (type == "box") {
        HalfspaceBox b{vec3(field(obj, "min", where), where + ".min"),
                       vec3(field(obj, "max", where), where + ".max")};
        if (!(b.lo.x < b.hi.x && b.lo.y < b.hi.y && b.lo.z < b.hi.z))
            bad(where, "box min must be componentwise below max");
        return b;
    }
    if (type == "polytope") {
        const json& verts = field(obj, "vertices", where);
        if (!verts.is_array() || verts.size() < 4)
            bad(where, "polytope needs at least 4 vertices");
        std::vector<Vec3> points;
        points.reserve(verts.size());
        for (const json& v : verts) points.push_back(vec3(v, where + ".vertices"));
        try {
            return ConvexPolytope(points);
        } catch (const ScenarioError& err) {
            bad(where, err.what());
        }
    }
    bad(where, "unknown shape type '" + type + "' (expected sphere, box or polytope)");
}

}  // namespace

Scenario Scenario::from_json_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& err) {
        throw ScenarioError(std::string("scenario: invalid JSON: ") + err.what());
    }

    Scenario sc;
    sc.name = root.value("name", "unnamed");

    // Workspace.
    const json& ws = field(root, "workspace", "workspace");
    const std::string ws_type = field(ws, "type", "workspace").get<std::string>();
    if (ws_type == "box") {
        HalfspaceBox box{vec3(field(ws, "min", "workspace"), "workspace.min"),
                         vec3(field(ws, "max", "workspace"), "workspace.max")};
        if (!(box.lo.x < box.hi.x && box.lo.y < box.hi.y && box.lo.z < box.hi.z))
            bad("workspace", "box min must be componentwise below max");
        sc.world.workspace = box;
    } else if (ws_type != "unbounded") {
        bad("workspace", "type must be 'unbounded' or 'box'");
    }

    const json& obstacles = field(root, "obstacles", "obstacles");
    if (!obstacles.is_array()) bad("obstacles", "expected an array");
    for (std::size_t i = 0; i < obstacles.size(); ++i) {
        std::ostringstream where;
        where << "obstacles[" << i << "]";
        sc.world.obstacles.push_back(parse_shape(obstacles[i], where.str()));
    }

    const json& robot = field(root, "robot", "robot");
    sc.world.robot_radius = number_field(robot, "radius", "robot");
    sc.world.safety_margin = number_field(robot, "safety_margin", "robot");
    if (sc.world.robot_radius < 0.0) bad("robot.radius", "must be non-negative");
    if (!(sc.world.safety_margin > 0.0)) bad("robot.safety_margin", "must be positive");

    const json& control = field(root, "control", "control");
    sc.params.kappa_s = number_field(control, "kappa_s", "control");
    sc.params.kappa_r = number_field(control, "kappa_r", "control");
    sc.params.gamma = number_field(control, "gamma", "control");
    sc.params.gamma_a = number_or(control, "gamma_a", sc.params.gamma / 3.0, "control");
    sc.params.gamma_s = number_or(control, "gamma_s", 2.0 * sc.params.gamma / 3.0, "control");
    sc.params.epsilon = number_field(control, "epsilon", "control");
    sc.params.r_a = sc.world.augmented_radius();
    if (!(sc.params.kappa_s > 0.0 && sc.params.kappa_r > 0.0))
        bad("control", "gains kappa_s and kappa_r must be positive");

    if (root.contains("sensor")) {
        const json& sensor = root.at("sensor");
        sc.sim.sensor.sensing_radius = number_field(sensor, "sensing_radius", "sensor");
        if (sensor.contains("angular_resolution")) {
            const json& res = sensor.at("angular_resolution");
            if (!res.is_number_integer()) bad("sensor.angular_resolution", "expected an integer");
            sc.sim.sensor.angular_resolution = res.get<int>();
        }
        if (sc.sim.sensor.sensing_radius <= sc.params.r_a + sc.params.gamma)
            bad("sensor.sensing_radius", "must exceed r_a + gamma");
        if (sc.sim.sensor.angular_resolution < 64)
            bad("sensor.angular_resolution", "must be at least 64");
    } else {
        sc.sim.sensor.sensing_radius = 2.0 * (sc.params.r_a + sc.params.gamma);
    }

    if (root.contains("sim")) {
        const json& sim = root.at("sim");
        sc.sim.dt_max = number_or(sim, "dt_max", sc.sim.dt_max, "sim");
        sc.sim.event_tolerance = number_or(sim, "event_tolerance", sc.sim.event_tolerance, "sim");
        sc.sim.convergence_radius =
            number_or(sim, "convergence_radius", sc.sim.convergence_radius, "sim");
        sc.sim.t_max = number_or(sim, "t_max", sc.sim.t_max, "sim");
        sc.sim.record_stride =
            static_cast<int>(number_or(sim, "record_stride", sc.sim.record_stride, "sim"));
        if (sim.contains("pipeline")) {
            const std::string p = sim.at("pipeline").get<std::string>();
            if (p == "exact")
                sc.sim.pipeline = Pipeline::Exact;
            else if (p == "sensed")
                sc.sim.pipeline = Pipeline::Sensed;
            else
                bad("sim.pipeline", "must be 'exact' or 'sensed'");
        }
        if (!(sc.sim.dt_max > 0.0)) bad("sim.dt_max", "must be positive");
        if (!(sc.sim.event_tolerance > 0.0)) bad("sim.event_tolerance", "must be positive");
        if (!(sc.sim.convergence_radius > 0.0)) bad("sim.convergence_radius", "must be positive");
        if (sc.sim.record_stride < 1) bad("sim.record_stride", "must be at least 1");
    }

    const json& starts = field(root, "initial_states", "initial_states");
    if (!starts.is_array() || starts.empty()) bad("initial_states", "expected a non-empty array");
    for (std::size_t i = 0; i < starts.size(); ++i) {
        std::ostringstream where;
        where << "initial_states[" << i << "]";
        const json& st = starts[i];
        HybridState xi;
        xi.x = vec3(field(st, "x", where.str()), where.str() + ".x");
        xi.h = st.contains("h") ? vec3(st.at("h"), where.str() + ".h") : xi.x;
        xi.a = st.contains("a") ? vec3(st.at("a"), where.str() + ".a") : Vec3{0, 0, 1};
        if (st.contains("mode")) {
            const int m = st.at("mode").get<int>();
            if (m != 0 && m != 1) bad(where.str() + ".mode", "must be 0 or 1");
            xi.m = static_cast<Mode>(m);
        }
        xi.s = number_or(st, "s", 0.0, where.str());
        xi.s0 = xi.s;
        sc.initial_states.push_back(xi);
    }
    return sc;
}

Scenario Scenario::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

}  // namespace nav3d
