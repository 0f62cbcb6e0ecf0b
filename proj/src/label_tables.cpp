// Built-in label inventories and natural-label tables for the four
// benchmark datasets.

#include "augtag/naturalize.hpp"

namespace augtag::tables {

const LabelTable& conll2003() {
  static const LabelTable table = {
      {"LOC", "location"},
      {"MISC", "miscellaneous"},
      {"ORG", "organization"},
      {"PER", "person"},
  };
  return table;
}

const LabelTable& ontonotes() {
  static const LabelTable table = {
      {"CARDINAL", "cardinal"},
      {"DATE", "date"},
      {"EVENT", "event"},
      {"FAC", "facility"},
      {"GPE", "country city state"},
      {"LANGUAGE", "language"},
      {"LAW", "law"},
      {"LOC", "location"},
      {"MONEY", "money"},
      {"NORP", "nationality religious political group"},
      {"ORDINAL", "ordinal"},
      {"ORG", "organization"},
      {"PERCENT", "percent"},
      {"PERSON", "person"},
      {"PRODUCT", "product"},
      {"QUANTITY", "quantity"},
      {"TIME", "time"},
      {"WORK_OF_ART", "work of art"},
  };
  return table;
}

const std::vector<SnipsDomain>& snips_domains() {
  static const std::vector<SnipsDomain> domains = {
      {"We", "GetWeather",
       {"timeRange", "condition_description", "country", "geographic_poi",
        "city", "state", "current_location", "condition_temperature",
        "spatial_relation"}},
      {"Mu", "PlayMusic",
       {"genre", "year", "album", "music_item", "playlist", "service", "sort",
        "artist", "track"}},
      {"Pl", "AddToPlaylist",
       {"entity_name", "music_item", "playlist", "playlist_owner", "artist"}},
      {"Bo", "RateBook",
       {"object_type", "object_part_of_series_type", "object_select",
        "rating_value", "object_name", "best_rating", "rating_unit"}},
      {"Se", "SearchScreeningEvent",
       {"timeRange", "object_location_type", "object_type", "location_name",
        "movie_name", "spatial_relation", "movie_type"}},
      {"Re", "BookRestaurant",
       {"party_size_number", "served_dish", "timeRange", "country", "poi",
        "cuisine", "spatial_relation", "city", "restaurant_name", "sort",
        "restaurant_type", "facility", "party_size_description", "state"}},
      {"Cr", "SearchCreativeWork", {"object_type", "object_name"}},
  };
  return domains;
}

const std::vector<std::string>& snips_slots() {
  static const std::vector<std::string> slots = [] {
    std::set<std::string> all;
    for (const auto& d : snips_domains()) all.insert(d.slots.begin(), d.slots.end());
    return std::vector<std::string>(all.begin(), all.end());
  }();
  return slots;
}

const std::vector<std::string>& snips_intents() {
  static const std::vector<std::string> intents = [] {
    std::vector<std::string> out;
    for (const auto& d : snips_domains()) out.push_back(d.intent);
    return out;
  }();
  return intents;
}

const std::vector<std::string>& atis_slots() {
  static const std::vector<std::string> slots = {
      "aircraft_code", "airline_code", "airline_name", "airport_code",
      "airport_name", "arrive_date.date_relative", "arrive_date.day_name",
      "arrive_date.day_number", "arrive_date.month_name",
      "arrive_date.today_relative", "arrive_time.end_time",
      "arrive_time.period_mod", "arrive_time.period_of_day",
      "arrive_time.start_time", "arrive_time.time",
      "arrive_time.time_relative", "booking_class", "city_name", "class_type",
      "compartment", "connect", "cost_relative", "day_name", "day_number",
      "days_code", "depart_date.date_relative", "depart_date.day_name",
      "depart_date.day_number", "depart_date.month_name",
      "depart_date.today_relative", "depart_date.year",
      "depart_time.end_time", "depart_time.period_mod",
      "depart_time.period_of_day", "depart_time.start_time",
      "depart_time.time", "depart_time.time_relative", "economy",
      "fare_amount", "fare_basis_code", "flight", "flight_days", "flight_mod",
      "flight_number", "flight_stop", "flight_time", "fromloc.airport_code",
      "fromloc.airport_name", "fromloc.city_name", "fromloc.state_code",
      "fromloc.state_name", "meal", "meal_code", "meal_description", "mod",
      "month_name", "or", "period_of_day", "restriction_code",
      "return_date.date_relative", "return_date.day_name",
      "return_date.day_number", "return_date.month_name",
      "return_date.today_relative", "return_time.period_mod",
      "return_time.period_of_day", "round_trip", "state_code", "state_name",
      "stoploc.airport_code", "stoploc.airport_name", "stoploc.city_name",
      "stoploc.state_code", "time", "time_relative", "today_relative",
      "toloc.airport_code", "toloc.airport_name", "toloc.city_name",
      "toloc.country_name", "toloc.state_code", "toloc.state_name",
      "transport_type",
  };
  return slots;
}

// Multi-intent rows are kept as single class strings.
const std::vector<std::string>& atis_intents() {
  static const std::vector<std::string> intents = {
      "atis_flight", "atis_airfare", "atis_ground_service", "atis_airline",
      "atis_abbreviation", "atis_aircraft", "atis_flight_time",
      "atis_quantity", "atis_airport", "atis_capacity",
      "atis_flight,atis_airfare", "atis_distance", "atis_city",
      "atis_ground_fare", "atis_flight_no", "atis_meal", "atis_restriction",
      "atis_airline,atis_flight_no", "atis_day_name",
      "atis_aircraft,atis_flight,atis_flight_no", "atis_cheapest",
      "atis_ground_service,atis_ground_fare", "atis_airfare,atis_flight_time",
      "atis_airfare,atis_flight", "atis_flight,atis_airline",
      "atis_flight_no,atis_airline",
  };
  return intents;
}

const LabelTable* builtin(std::string_view name) {
  if (name == "conll" || name == "conll2003") return &conll2003();
  if (name == "ontonotes") return &ontonotes();
  return nullptr;
}

}  // namespace augtag::tables
