#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "spiketrain/signal.hpp"
#include "spiketrain/trig_recon.hpp"

namespace spiketrain {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// One CSV row, values joined with ',' and no trailing newline.
std::string csv_row(const std::vector<double>& values);

/// Parses comma-separated reals from the first non-empty line.
/// Throws Error{ParseError}.
std::vector<double> parse_csv_row(std::string_view text);

/// {"amplitudes":[...],"nodes":[...]}
nlohmann::json signal_to_json(const SpikeSignal& signal);
/// Throws Error{ParseError} for malformed documents, or the SpikeSignal
/// validation errors.
SpikeSignal signal_from_json(const nlohmann::json& doc);

/// {"a":..,"b":..,"phi":..,"theta":..}
nlohmann::json unit_circle_to_json(const UnitCircleSignal& signal);
UnitCircleSignal unit_circle_from_json(const nlohmann::json& doc);

/// {"M0":..,"M1":..,"M2":..,"im_m1":..,"re_m1": optional}
nlohmann::json measurements_to_json(const TrigMeasurements& meas);
TrigMeasurements measurements_from_json(const nlohmann::json& doc);

/// Parses JSON text, mapping syntax errors to Error{ParseError}.
nlohmann::json parse_json(std::string_view text);

}  // namespace spiketrain
