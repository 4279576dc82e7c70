#include "skyplanner/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "skyplanner/errors.hpp"

namespace skyplanner {

namespace {

using nlohmann::json;

void reject_unknown(const json& block, const char* name, const std::set<std::string>& known) {
    if (!block.is_object()) throw InvalidParameter(std::string("config block '") + name + "' must be an object");
    for (const auto& item : block.items()) {
        if (!known.count(item.key())) {
            throw InvalidParameter(std::string("unknown key '") + item.key() + "' in config block '" + name + "'");
        }
    }
}

template <class T>
void read(const json& block, const char* key, T& out) {
    if (!block.contains(key)) return;
    try {
        out = block.at(key).get<T>();
    } catch (const json::exception&) {
        throw InvalidParameter(std::string("config key '") + key + "' has the wrong type");
    }
}

void read_db(const json& block, const char* key, double& linear) {
    if (!block.contains(key)) return;
    double db = 0.0;
    read(block, key, db);
    linear = db_to_linear(db);
}

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace

ExperimentConfig config_from_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidParameter(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(root, "root", {"scene", "channel", "power", "experiment"});
    ExperimentConfig c;

    if (root.contains("scene")) {
        const json& s = root["scene"];
        reject_unknown(s, "scene", {"lambda_tbs", "lambda_type1", "lambda_type2", "sd_distance_m",
                                    "window_margin_m", "cluster_radius_m", "devices_per_cluster"});
        read(s, "lambda_tbs", c.scene.lambda_tbs_km2);
        read(s, "lambda_type1", c.scene.lambda_type1_km2);
        read(s, "lambda_type2", c.scene.lambda_type2_km2);
        read(s, "sd_distance_m", c.scene.sd_distance_m);
        read(s, "window_margin_m", c.scene.window_margin_m);
        read(s, "cluster_radius_m", c.scene.cluster_radius_m);
        read(s, "devices_per_cluster", c.scene.devices_per_cluster);
        c.channel.r_c_m = c.scene.cluster_radius_m;
    }
    if (root.contains("channel")) {
        const json& ch = root["channel"];
        reject_unknown(ch, "channel", {"a", "b", "eta_los_db", "eta_nlos_db", "alpha_los", "alpha_nlos",
                                       "m_los", "m_nlos", "rho_iot_w", "rho_uav_w", "sigma2_w", "h_u_m",
                                       "r_c_m", "collection_model"});
        read(ch, "a", c.channel.a);
        read(ch, "b", c.channel.b);
        read_db(ch, "eta_los_db", c.channel.eta_los);
        read_db(ch, "eta_nlos_db", c.channel.eta_nlos);
        read(ch, "alpha_los", c.channel.alpha_los);
        read(ch, "alpha_nlos", c.channel.alpha_nlos);
        for (const char* key : {"m_los", "m_nlos"}) {
            if (ch.contains(key) && !ch[key].is_number_integer()) {
                throw InvalidParameter(std::string("'") + key + "' must be an integer Nakagami shape");
            }
        }
        read(ch, "m_los", c.channel.m_los);
        read(ch, "m_nlos", c.channel.m_nlos);
        read(ch, "rho_iot_w", c.channel.rho_iot_w);
        read(ch, "rho_uav_w", c.channel.rho_uav_w);
        read(ch, "sigma2_w", c.channel.sigma2_w);
        read(ch, "h_u_m", c.channel.h_u_m);
        if (ch.contains("r_c_m")) {
            read(ch, "r_c_m", c.channel.r_c_m);
            c.scene.cluster_radius_m = c.channel.r_c_m;
        }
        std::string model(to_string(c.collection));
        read(ch, "collection_model", model);
        c.collection = collection_model_from_string(model);
    }
    if (root.contains("power")) {
        const json& p = root["power"];
        reject_unknown(p, "power", {"p_m_loaded_w", "p_m_empty_w", "p_s_loaded_w", "p_s_empty_w", "v_loaded_mps",
                                    "v_empty_mps", "battery_wh", "payload_kg", "rotor"});
        read(p, "p_m_loaded_w", c.power.p_motion_loaded_w);
        read(p, "p_m_empty_w", c.power.p_motion_empty_w);
        read(p, "p_s_loaded_w", c.power.p_serve_loaded_w);
        read(p, "p_s_empty_w", c.power.p_serve_empty_w);
        read(p, "v_loaded_mps", c.power.v_loaded_mps);
        read(p, "v_empty_mps", c.power.v_empty_mps);
        double wh = c.power.battery_j / 3600.0;
        read(p, "battery_wh", wh);
        c.power.battery_j = wh * 3600.0;
        read(p, "payload_kg", c.power.payload_kg);
        if (p.contains("rotor")) {
            const json& r = p["rotor"];
            reject_unknown(r, "rotor", {"P0", "Pi", "U_tip", "v0", "d0", "rho_air", "s_solidity", "A_disc",
                                        "reference_weight_kg", "empty_weight_kg"});
            RotorParams rotor;
            read(r, "P0", rotor.P0);
            read(r, "Pi", rotor.Pi);
            read(r, "U_tip", rotor.U_tip);
            read(r, "v0", rotor.v0);
            read(r, "d0", rotor.d0);
            read(r, "rho_air", rotor.rho_air);
            read(r, "s_solidity", rotor.s_solidity);
            read(r, "A_disc", rotor.A_disc);
            read(r, "reference_weight_kg", rotor.reference_weight_kg);
            double empty_kg = rotor.reference_weight_kg;
            read(r, "empty_weight_kg", empty_kg);
            rotor.validate();
            c.power = profile_from_rotor(rotor, empty_kg, c.power.payload_kg, c.power.battery_j);
        }
    }
    if (root.contains("experiment")) {
        const json& e = root["experiment"];
        reject_unknown(e, "experiment", {"trials", "seed", "objectives", "n1", "n2", "demand_type1_bithz",
                                         "demand_type2_bithz", "enumeration_cap", "sweep"});
        read(e, "trials", c.trials);
        read(e, "seed", c.seed);
        read(e, "n1", c.n1);
        read(e, "n2", c.n2);
        read(e, "demand_type1_bithz", c.demands.type1_bithz);
        read(e, "demand_type2_bithz", c.demands.type2_bithz);
        read(e, "enumeration_cap", c.enumeration_cap);
        if (e.contains("objectives")) {
            std::vector<std::string> names;
            read(e, "objectives", names);
            c.objectives.clear();
            for (const auto& n : names) c.objectives.push_back(objective_from_string(n));
        }
        if (e.contains("sweep")) {
            const json& sw = e["sweep"];
            reject_unknown(sw, "sweep", {"axis", "values"});
            read(sw, "axis", c.sweep_axis);
            read(sw, "values", c.sweep_values);
        }
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return config_from_json(text.str());
}

std::string config_to_json(const ExperimentConfig& c) {
    nlohmann::ordered_json j;
    j["scene"] = {{"lambda_tbs", c.scene.lambda_tbs_km2},
                  {"lambda_type1", c.scene.lambda_type1_km2},
                  {"lambda_type2", c.scene.lambda_type2_km2},
                  {"sd_distance_m", c.scene.sd_distance_m},
                  {"window_margin_m", c.scene.window_margin_m},
                  {"cluster_radius_m", c.scene.cluster_radius_m},
                  {"devices_per_cluster", c.scene.devices_per_cluster}};
    j["channel"] = {{"a", c.channel.a},
                    {"b", c.channel.b},
                    {"eta_los_db", linear_to_db(c.channel.eta_los)},
                    {"eta_nlos_db", linear_to_db(c.channel.eta_nlos)},
                    {"alpha_los", c.channel.alpha_los},
                    {"alpha_nlos", c.channel.alpha_nlos},
                    {"m_los", c.channel.m_los},
                    {"m_nlos", c.channel.m_nlos},
                    {"rho_iot_w", c.channel.rho_iot_w},
                    {"rho_uav_w", c.channel.rho_uav_w},
                    {"sigma2_w", c.channel.sigma2_w},
                    {"h_u_m", c.channel.h_u_m},
                    {"r_c_m", c.channel.r_c_m},
                    {"collection_model", std::string(to_string(c.collection))}};
    j["power"] = {{"p_m_loaded_w", c.power.p_motion_loaded_w},
                  {"p_m_empty_w", c.power.p_motion_empty_w},
                  {"p_s_loaded_w", c.power.p_serve_loaded_w},
                  {"p_s_empty_w", c.power.p_serve_empty_w},
                  {"v_loaded_mps", c.power.v_loaded_mps},
                  {"v_empty_mps", c.power.v_empty_mps},
                  {"battery_wh", c.power.battery_j / 3600.0},
                  {"payload_kg", c.power.payload_kg}};
    std::vector<std::string> objectives;
    for (Objective o : c.objectives) objectives.emplace_back(to_string(o));
    j["experiment"] = {{"trials", c.trials},
                       {"seed", c.seed},
                       {"objectives", objectives},
                       {"n1", c.n1},
                       {"n2", c.n2},
                       {"demand_type1_bithz", c.demands.type1_bithz},
                       {"demand_type2_bithz", c.demands.type2_bithz},
                       {"enumeration_cap", c.enumeration_cap}};
    if (!c.sweep_axis.empty()) j["experiment"]["sweep"] = {{"axis", c.sweep_axis}, {"values", c.sweep_values}};
    return j.dump(2);
}

}  // namespace skyplanner
