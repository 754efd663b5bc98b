#include "spiketrain/io.hpp"

#include <charconv>
#include <system_error>

#include "spiketrain/error.hpp"

namespace spiketrain {

namespace {

double number_field(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_number()) {
    throw Error(ErrorKind::ParseError, std::string("missing numeric field '") + key + "'");
  }
  return doc.at(key).get<double>();
}

std::vector<double> number_array(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_array()) {
    throw Error(ErrorKind::ParseError, std::string("missing array field '") + key + "'");
  }
  std::vector<double> values;
  for (const auto& item : doc.at(key)) {
    if (!item.is_number()) {
      throw Error(ErrorKind::ParseError, std::string("non-numeric entry in '") + key + "'");
    }
    values.push_back(item.get<double>());
  }
  return values;
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string csv_row(const std::vector<double>& values) {
  std::string row;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k > 0) row += ',';
    row += format_double(values[k]);
  }
  return row;
}

std::vector<double> parse_csv_row(std::string_view text) {
  const auto skip = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  // First non-empty line.
  while (!text.empty()) {
    const auto eol = text.find('\n');
    auto line = text.substr(0, eol);
    while (!line.empty() && skip(line.front())) line.remove_prefix(1);
    if (!line.empty()) {
      text = line;
      break;
    }
    if (eol == std::string_view::npos) text = {};
    else text.remove_prefix(eol + 1);
  }
  std::vector<double> values;
  while (!text.empty()) {
    const auto comma = text.find(',');
    auto field = text.substr(0, comma);
    while (!field.empty() && skip(field.front())) field.remove_prefix(1);
    while (!field.empty() && skip(field.back())) field.remove_suffix(1);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
      throw Error(ErrorKind::ParseError, "bad CSV field '" + std::string(field) + "'");
    }
    values.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (values.empty()) throw Error(ErrorKind::ParseError, "empty CSV input");
  return values;
}

nlohmann::json signal_to_json(const SpikeSignal& signal) {
  return {{"amplitudes", std::vector<double>(signal.amplitudes().begin(), signal.amplitudes().end())},
          {"nodes", std::vector<double>(signal.nodes().begin(), signal.nodes().end())}};
}

SpikeSignal signal_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, "signal must be a JSON object");
  return SpikeSignal::create(number_array(doc, "amplitudes"), number_array(doc, "nodes"));
}

nlohmann::json unit_circle_to_json(const UnitCircleSignal& signal) {
  return {{"a", signal.a()}, {"b", signal.b()}, {"phi", signal.phi()}, {"theta", signal.theta()}};
}

UnitCircleSignal unit_circle_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, "signal must be a JSON object");
  return UnitCircleSignal(number_field(doc, "a"), number_field(doc, "b"), number_field(doc, "phi"),
                          number_field(doc, "theta"));
}

nlohmann::json measurements_to_json(const TrigMeasurements& meas) {
  nlohmann::json doc{{"M0", meas.m0_abs}, {"M1", meas.m1_abs}, {"M2", meas.m2_abs},
                     {"im_m1", meas.im_m1}};
  if (meas.re_m1) doc["re_m1"] = *meas.re_m1;
  return doc;
}

TrigMeasurements measurements_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, "measurements must be a JSON object");
  TrigMeasurements meas{number_field(doc, "M0"), number_field(doc, "M1"), number_field(doc, "M2"),
                        number_field(doc, "im_m1"), std::nullopt};
  if (doc.contains("re_m1") && !doc.at("re_m1").is_null()) meas.re_m1 = number_field(doc, "re_m1");
  return meas;
}

nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

}  // namespace spiketrain
