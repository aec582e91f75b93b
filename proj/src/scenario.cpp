#include "riscov/scenario.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "riscov/fingerprint.hpp"
#include "riscov/geometry.hpp"

namespace riscov {

namespace {

using nlohmann::json;

/// Per-band parameter columns of the base-station configuration table.
/// Cells on one of these bands may omit the corresponding fields.
struct BandDefaults {
    double tx_power_dbm, antenna_gain_dbi, feeder_loss_db, noise_figure_db;
    double interference_margin_db, doppler_margin_db, fade_margin_db, shadow_margin_db,
        implementation_loss_db;
    int antenna_elements;
    double bandwidth_mhz;
    int subcarriers_used, subcarriers_total;
    double sampling_factor, reuse_factor, coherence_time_ms, coherence_bandwidth_mhz,
        spatial_duty_cycle_pct;
};

const std::map<int, BandDefaults>& band_defaults()
{
    static const std::map<int, BandDefaults> table{
        {800, {46, 16, 2, 8, 2, 3, 10, 12.8, 0, 1, 80, 320, 512, 1.536, 1, 50, 1, 0}},
        {2100, {49, 18, 2, 8, 2, 3, 10, 15.2, 0, 1, 120, 320, 512, 1.536, 1, 50, 1, 0}},
        {3500, {53, 24, 3, 7, 2, 3, 10, 10, 3, 64, 120, 320, 512, 1.536, 1, 50, 1, 25}},
    };
    return table;
}

[[noreturn]] void fail_parse(const std::string& path, const std::string& what)
{
    throw parse_error(path + ": " + what);
}

const json& require_field(const json& obj, const char* key, const std::string& path)
{
    auto it = obj.find(key);
    if (it == obj.end())
    {
        fail_parse(path, std::string("missing required field '") + key + "'");
    }
    return *it;
}

double as_number(const json& v, const std::string& path)
{
    if (!v.is_number())
    {
        fail_parse(path, "expected a number");
    }
    return v.get<double>();
}

double get_number(const json& obj, const char* key, const std::string& path)
{
    return as_number(require_field(obj, key, path), path + "." + key);
}

double get_number_or(const json& obj, const char* key, const std::string& path, double fallback)
{
    auto it = obj.find(key);
    if (it == obj.end())
    {
        return fallback;
    }
    return as_number(*it, path + "." + key);
}

int get_int(const json& obj, const char* key, const std::string& path)
{
    const double v = get_number(obj, key, path);
    if (v != std::floor(v))
    {
        fail_parse(path + "." + key, "expected an integer");
    }
    return static_cast<int>(v);
}

int get_int_or(const json& obj, const char* key, const std::string& path, int fallback)
{
    if (obj.find(key) == obj.end())
    {
        return fallback;
    }
    return get_int(obj, key, path);
}

std::string get_string(const json& obj, const char* key, const std::string& path)
{
    const json& v = require_field(obj, key, path);
    if (!v.is_string())
    {
        fail_parse(path + "." + key, "expected a string");
    }
    return v.get<std::string>();
}

Vec2 get_vec2(const json& obj, const char* key, const std::string& path)
{
    const json& v = require_field(obj, key, path);
    const std::string p = path + "." + key;
    if (!v.is_array() || v.size() != 2)
    {
        fail_parse(p, "expected [x, y]");
    }
    return Vec2{as_number(v[0], p + "[0]"), as_number(v[1], p + "[1]")};
}

void check_known_keys(const json& obj, const std::set<std::string>& allowed,
                      const std::string& path)
{
    for (auto it = obj.begin(); it != obj.end(); ++it)
    {
        if (allowed.find(it.key()) == allowed.end())
        {
            fail_parse(path, "unknown field '" + it.key() + "'");
        }
    }
}

bool id_charset_ok(const std::string& id)
{
    if (id.empty())
    {
        return false;
    }
    for (char c : id)
    {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.' || c == ':';
        if (!ok)
        {
            return false;
        }
    }
    return true;
}

AreaGrid parse_grid(const json& j)
{
    const std::string path = "grid";
    if (!j.is_object())
    {
        fail_parse(path, "expected an object");
    }
    check_known_keys(j, {"origin_x", "origin_y", "width", "height", "resolution", "rx_height"},
                     path);
    AreaGrid g;
    g.origin_x = get_number_or(j, "origin_x", path, 0.0);
    g.origin_y = get_number_or(j, "origin_y", path, 0.0);
    g.width = get_number(j, "width", path);
    g.height = get_number(j, "height", path);
    g.resolution = get_number(j, "resolution", path);
    g.rx_height = get_number_or(j, "rx_height", path, 1.5);
    return g;
}

Building parse_building(const json& j, std::size_t index)
{
    std::string path = "buildings[" + std::to_string(index) + "]";
    if (!j.is_object())
    {
        fail_parse(path, "expected an object");
    }
    check_known_keys(j, {"id", "footprint", "roof_height"}, path);
    Building b;
    b.id = j.find("id") != j.end() ? get_string(j, "id", path) : "b" + std::to_string(index);
    b.roof_height = get_number(j, "roof_height", path);
    const json& fp = require_field(j, "footprint", path);
    if (!fp.is_array())
    {
        fail_parse(path + ".footprint", "expected an array of [x, y] vertices");
    }
    for (std::size_t k = 0; k < fp.size(); ++k)
    {
        const json& v = fp[k];
        const std::string vp = path + ".footprint[" + std::to_string(k) + "]";
        if (!v.is_array() || v.size() != 2)
        {
            fail_parse(vp, "expected [x, y]");
        }
        b.footprint.push_back(Vec2{as_number(v[0], vp), as_number(v[1], vp)});
    }
    return b;
}

CellSite parse_cell(const json& j, std::size_t index)
{
    std::string path = "cells[" + std::to_string(index) + "]";
    if (!j.is_object())
    {
        fail_parse(path, "expected an object");
    }
    check_known_keys(j,
                     {"id", "position", "antenna_height", "frequency_mhz", "tx_power_dbm",
                      "antenna_gain_dbi", "feeder_loss_db", "noise_figure_db",
                      "interference_margin_db", "doppler_margin_db", "fade_margin_db",
                      "shadow_margin_db", "implementation_loss_db", "antenna_elements",
                      "bandwidth_mhz", "subcarriers_used", "subcarriers_total", "sampling_factor",
                      "reuse_factor", "coherence_time_ms", "coherence_bandwidth_mhz",
                      "spatial_duty_cycle_pct"},
                     path);

    CellSite c;
    c.id = get_string(j, "id", path);
    c.position = get_vec2(j, "position", path);
    c.antenna_height = get_number(j, "antenna_height", path);
    c.frequency_mhz = get_number(j, "frequency_mhz", path);

    const double band = c.frequency_mhz;
    const BandDefaults* d = nullptr;
    if (band == std::floor(band))
    {
        auto it = band_defaults().find(static_cast<int>(band));
        if (it != band_defaults().end())
        {
            d = &it->second;
        }
    }

    auto num = [&](const char* key, double fallback, bool have_default) {
        if (have_default)
        {
            return get_number_or(j, key, path, fallback);
        }
        return get_number(j, key, path);
    };

    const bool dd = d != nullptr;
    c.tx_power_dbm = num("tx_power_dbm", dd ? d->tx_power_dbm : 0, dd);
    c.antenna_gain_dbi = num("antenna_gain_dbi", dd ? d->antenna_gain_dbi : 0, dd);
    c.feeder_loss_db = num("feeder_loss_db", dd ? d->feeder_loss_db : 0, dd);
    c.noise_figure_db = num("noise_figure_db", dd ? d->noise_figure_db : 0, dd);
    c.interference_margin_db = num("interference_margin_db", dd ? d->interference_margin_db : 0, dd);
    c.doppler_margin_db = num("doppler_margin_db", dd ? d->doppler_margin_db : 0, dd);
    c.fade_margin_db = num("fade_margin_db", dd ? d->fade_margin_db : 0, dd);
    c.shadow_margin_db = num("shadow_margin_db", dd ? d->shadow_margin_db : 0, dd);
    c.implementation_loss_db = num("implementation_loss_db", dd ? d->implementation_loss_db : 0, dd);
    c.antenna_elements =
        dd ? get_int_or(j, "antenna_elements", path, d->antenna_elements)
           : get_int(j, "antenna_elements", path);
    c.bandwidth_mhz = num("bandwidth_mhz", dd ? d->bandwidth_mhz : 0, dd);
    c.subcarriers_used = dd ? get_int_or(j, "subcarriers_used", path, d->subcarriers_used)
                            : get_int(j, "subcarriers_used", path);
    c.subcarriers_total = dd ? get_int_or(j, "subcarriers_total", path, d->subcarriers_total)
                             : get_int(j, "subcarriers_total", path);
    c.sampling_factor = num("sampling_factor", dd ? d->sampling_factor : 0, dd);
    c.reuse_factor = num("reuse_factor", dd ? d->reuse_factor : 0, dd);
    c.coherence_time_ms = num("coherence_time_ms", dd ? d->coherence_time_ms : 0, dd);
    c.coherence_bandwidth_mhz = num("coherence_bandwidth_mhz", dd ? d->coherence_bandwidth_mhz : 0, dd);
    c.spatial_duty_cycle_pct = num("spatial_duty_cycle_pct", dd ? d->spatial_duty_cycle_pct : 0, dd);
    return c;
}

RisPanel parse_panel(const json& j, std::size_t index, const std::vector<Building>& buildings)
{
    std::string path = "ris_panels[" + std::to_string(index) + "]";
    if (!j.is_object())
    {
        fail_parse(path, "expected an object");
    }
    check_known_keys(j,
                     {"id", "position", "default_height", "height_offset", "rows", "cols",
                      "element_width", "element_height", "reflection_amplitude",
                      "element_gain_dbi", "pattern", "facing_normal"},
                     path);

    RisPanel p;
    p.id = get_string(j, "id", path);
    p.position = get_vec2(j, "position", path);
    p.default_height = get_number(j, "default_height", path);
    p.height_offset = get_number_or(j, "height_offset", path, 0.0);
    p.rows = get_int_or(j, "rows", path, 102);
    p.cols = get_int_or(j, "cols", path, 100);
    p.element_width = get_number_or(j, "element_width", path, 0.01);
    p.element_height = get_number_or(j, "element_height", path, 0.01);
    p.reflection_amplitude = get_number_or(j, "reflection_amplitude", path, 0.9);
    if (j.find("element_gain_dbi") != j.end())
    {
        p.element_gain_dbi = as_number(j["element_gain_dbi"], path + ".element_gain_dbi");
    }
    if (j.find("pattern") != j.end())
    {
        const json& v = j["pattern"];
        if (!v.is_string())
        {
            fail_parse(path + ".pattern", "expected a string");
        }
        const std::string s = v.get<std::string>();
        if (s == "cosine")
        {
            p.pattern = UnitCellPattern::cosine;
        }
        else if (s == "isotropic")
        {
            p.pattern = UnitCellPattern::isotropic;
        }
        else
        {
            fail_parse(path + ".pattern", "expected \"cosine\" or \"isotropic\"");
        }
    }
    if (j.find("facing_normal") != j.end())
    {
        const Vec2 n = get_vec2(j, "facing_normal", path);
        const double len = std::hypot(n.x, n.y);
        if (len <= 0.0 || !std::isfinite(len))
        {
            throw validation_error("ris panel '" + p.id + "': facing_normal must be non-zero");
        }
        // Keep already-normalized vectors bit-stable across reload.
        p.facing_normal = std::abs(len - 1.0) <= 1e-12 ? n : Vec2{n.x / len, n.y / len};
    }
    else
    {
        if (buildings.empty())
        {
            throw validation_error("ris panel '" + p.id +
                                   "': facing_normal omitted and no buildings to derive it from");
        }
        p.facing_normal = nearest_edge_outward_normal(p.position, buildings);
    }
    return p;
}

json vec2_json(const Vec2& v)
{
    return json::array({v.x, v.y});
}

json scenario_json(const Scenario& s)
{
    json j;
    j["grid"] = {{"origin_x", s.grid.origin_x}, {"origin_y", s.grid.origin_y},
                 {"width", s.grid.width},       {"height", s.grid.height},
                 {"resolution", s.grid.resolution}, {"rx_height", s.grid.rx_height}};
    j["buildings"] = json::array();
    for (const Building& b : s.buildings)
    {
        j["buildings"].push_back(
            {{"id", b.id},
             {"footprint", [&] {
                  json fp = json::array();
                  for (const Vec2& v : b.footprint)
                  {
                      fp.push_back(vec2_json(v));
                  }
                  return fp;
              }()},
             {"roof_height", b.roof_height}});
    }
    j["cells"] = json::array();
    for (const CellSite& c : s.cells)
    {
        j["cells"].push_back({{"id", c.id},
                              {"position", vec2_json(c.position)},
                              {"antenna_height", c.antenna_height},
                              {"frequency_mhz", c.frequency_mhz},
                              {"tx_power_dbm", c.tx_power_dbm},
                              {"antenna_gain_dbi", c.antenna_gain_dbi},
                              {"feeder_loss_db", c.feeder_loss_db},
                              {"noise_figure_db", c.noise_figure_db},
                              {"interference_margin_db", c.interference_margin_db},
                              {"doppler_margin_db", c.doppler_margin_db},
                              {"fade_margin_db", c.fade_margin_db},
                              {"shadow_margin_db", c.shadow_margin_db},
                              {"implementation_loss_db", c.implementation_loss_db},
                              {"antenna_elements", c.antenna_elements},
                              {"bandwidth_mhz", c.bandwidth_mhz},
                              {"subcarriers_used", c.subcarriers_used},
                              {"subcarriers_total", c.subcarriers_total},
                              {"sampling_factor", c.sampling_factor},
                              {"reuse_factor", c.reuse_factor},
                              {"coherence_time_ms", c.coherence_time_ms},
                              {"coherence_bandwidth_mhz", c.coherence_bandwidth_mhz},
                              {"spatial_duty_cycle_pct", c.spatial_duty_cycle_pct}});
    }
    j["ris_panels"] = json::array();
    for (const RisPanel& p : s.ris_panels)
    {
        json pj = {{"id", p.id},
                   {"position", vec2_json(p.position)},
                   {"default_height", p.default_height},
                   {"height_offset", p.height_offset},
                   {"rows", p.rows},
                   {"cols", p.cols},
                   {"element_width", p.element_width},
                   {"element_height", p.element_height},
                   {"reflection_amplitude", p.reflection_amplitude},
                   {"pattern", p.pattern == UnitCellPattern::cosine ? "cosine" : "isotropic"},
                   {"facing_normal", vec2_json(p.facing_normal)}};
        if (p.element_gain_dbi)
        {
            pj["element_gain_dbi"] = *p.element_gain_dbi;
        }
        j["ris_panels"].push_back(pj);
    }
    return j;
}

[[noreturn]] void fail_validation(const std::string& what)
{
    throw validation_error(what);
}

void check_finite(double v, const std::string& what)
{
    if (!std::isfinite(v))
    {
        fail_validation(what + " must be finite");
    }
}

} // namespace

int AreaGrid::x_count() const
{
    return static_cast<int>(std::floor(width / resolution));
}

int AreaGrid::y_count() const
{
    return static_cast<int>(std::floor(height / resolution));
}

bool AreaGrid::contains(const Vec2& p) const
{
    return p.x >= origin_x && p.x <= origin_x + width && p.y >= origin_y &&
           p.y <= origin_y + height;
}

Scenario parse_scenario(const std::string& text)
{
    json j;
    try
    {
        j = json::parse(text);
    }
    catch (const json::parse_error& e)
    {
        throw parse_error(std::string("scenario document: ") + e.what());
    }
    if (!j.is_object())
    {
        fail_parse("scenario document", "expected a top-level object");
    }
    check_known_keys(j, {"grid", "buildings", "cells", "ris_panels", "meta"}, "scenario document");

    Scenario s;
    s.grid = parse_grid(require_field(j, "grid", "scenario document"));

    if (j.find("buildings") != j.end())
    {
        const json& arr = j["buildings"];
        if (!arr.is_array())
        {
            fail_parse("buildings", "expected an array");
        }
        for (std::size_t i = 0; i < arr.size(); ++i)
        {
            s.buildings.push_back(parse_building(arr[i], i));
        }
    }
    if (j.find("cells") != j.end())
    {
        const json& arr = j["cells"];
        if (!arr.is_array())
        {
            fail_parse("cells", "expected an array");
        }
        for (std::size_t i = 0; i < arr.size(); ++i)
        {
            s.cells.push_back(parse_cell(arr[i], i));
        }
    }
    if (j.find("ris_panels") != j.end())
    {
        const json& arr = j["ris_panels"];
        if (!arr.is_array())
        {
            fail_parse("ris_panels", "expected an array");
        }
        for (std::size_t i = 0; i < arr.size(); ++i)
        {
            s.ris_panels.push_back(parse_panel(arr[i], i, s.buildings));
        }
    }

    validate_scenario(s);
    return s;
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw parse_error("cannot open scenario file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string scenario_to_json(const Scenario& s)
{
    return scenario_json(s).dump(2) + "\n";
}

void save_scenario(const Scenario& s, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
    {
        throw std::runtime_error("cannot write scenario file: " + path);
    }
    out << scenario_to_json(s);
}

void validate_scenario(const Scenario& s)
{
    const AreaGrid& g = s.grid;
    if (!(g.width > 0.0) || !(g.height > 0.0))
    {
        fail_validation("grid: width and height must be > 0");
    }
    if (!(g.resolution > 0.0))
    {
        fail_validation("grid: resolution must be > 0");
    }
    if (g.x_count() < 1 || g.y_count() < 1)
    {
        fail_validation("grid: derived point counts must be >= 1");
    }
    if (!(g.rx_height > 0.0))
    {
        fail_validation("grid: rx_height must be > 0");
    }

    std::set<std::string> ids;
    for (const Building& b : s.buildings)
    {
        if (!id_charset_ok(b.id))
        {
            fail_validation("building '" + b.id + "': id must be non-empty [A-Za-z0-9_.:-]");
        }
        if (!ids.insert(b.id).second)
        {
            fail_validation("building '" + b.id + "': duplicate id");
        }
        if (b.footprint.size() < 3)
        {
            fail_validation("building '" + b.id + "': footprint needs at least 3 vertices");
        }
        if (!polygon_is_simple(b.footprint))
        {
            fail_validation("building '" + b.id +
                            "': footprint must be a simple polygon without repeated vertices");
        }
        if (!(b.roof_height > 0.0))
        {
            fail_validation("building '" + b.id + "': roof_height must be > 0");
        }
    }

    ids.clear();
    for (const CellSite& c : s.cells)
    {
        if (!id_charset_ok(c.id))
        {
            fail_validation("cell '" + c.id + "': id must be non-empty [A-Za-z0-9_.:-]");
        }
        if (!ids.insert(c.id).second)
        {
            fail_validation("cell '" + c.id + "': duplicate id");
        }
        if (!(c.frequency_mhz > 0.0))
        {
            fail_validation("cell '" + c.id + "': frequency_mhz must be > 0");
        }
        if (c.antenna_height < 1.0 || c.antenna_height > 200.0)
        {
            fail_validation("cell '" + c.id + "': antenna_height must be within [1, 200] m");
        }
        check_finite(c.tx_power_dbm, "cell '" + c.id + "': tx_power_dbm");
        const struct {
            const char* name;
            double value;
        } nonneg[] = {
            {"feeder_loss_db", c.feeder_loss_db},
            {"interference_margin_db", c.interference_margin_db},
            {"doppler_margin_db", c.doppler_margin_db},
            {"fade_margin_db", c.fade_margin_db},
            {"shadow_margin_db", c.shadow_margin_db},
            {"implementation_loss_db", c.implementation_loss_db},
            {"noise_figure_db", c.noise_figure_db},
        };
        for (const auto& f : nonneg)
        {
            if (f.value < 0.0)
            {
                fail_validation("cell '" + c.id + "': " + f.name + " must be >= 0");
            }
        }
        if (!g.contains(c.position))
        {
            fail_validation("cell '" + c.id + "': position outside grid extent");
        }
    }

    ids.clear();
    for (const RisPanel& p : s.ris_panels)
    {
        if (!id_charset_ok(p.id))
        {
            fail_validation("ris panel '" + p.id + "': id must be non-empty [A-Za-z0-9_.:-]");
        }
        if (!ids.insert(p.id).second)
        {
            fail_validation("ris panel '" + p.id + "': duplicate id");
        }
        if (p.rows < 1 || p.cols < 1)
        {
            fail_validation("ris panel '" + p.id + "': rows and cols must be >= 1");
        }
        if (!(p.element_width > 0.0) || !(p.element_height > 0.0))
        {
            fail_validation("ris panel '" + p.id + "': element dimensions must be > 0");
        }
        if (!(p.reflection_amplitude > 0.0) || p.reflection_amplitude > 1.0)
        {
            fail_validation("ris panel '" + p.id + "': reflection_amplitude must be in (0, 1]");
        }
        if (!(p.default_height > 0.0))
        {
            fail_validation("ris panel '" + p.id + "': default_height must be > 0");
        }
        if (!(p.current_height() > 0.0))
        {
            fail_validation("ris panel '" + p.id + "': default_height + height_offset must be > 0");
        }
        const double nlen = std::hypot(p.facing_normal.x, p.facing_normal.y);
        if (std::abs(nlen - 1.0) > 1e-9)
        {
            fail_validation("ris panel '" + p.id + "': facing_normal must be a unit vector");
        }
        if (!g.contains(p.position))
        {
            fail_validation("ris panel '" + p.id + "': position outside grid extent");
        }
    }
}

Scenario apply_ris_offset(const Scenario& s, double offset_m)
{
    Scenario out = s;
    for (RisPanel& p : out.ris_panels)
    {
        if (p.default_height + offset_m <= 0.0)
        {
            throw std::domain_error("apply_ris_offset: panel '" + p.id +
                                    "' height would drop to " +
                                    std::to_string(p.default_height + offset_m) + " m");
        }
        p.height_offset = offset_m;
    }
    return out;
}

std::string world_fingerprint(const Scenario& s)
{
    Scenario zeroed = s;
    for (RisPanel& p : zeroed.ris_panels)
    {
        p.height_offset = 0.0;
    }
    return hex64(fnv1a64(scenario_json(zeroed).dump()));
}

std::string config_fingerprint(const Scenario& s)
{
    return hex64(fnv1a64(scenario_json(s).dump()));
}

} // namespace riscov
