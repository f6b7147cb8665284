#pragma once

// ISO 3166-1 alpha-3 codes to the display names used throughout the panel.
// Includes the PWT-specific "CH2" (second China series) and the defunct "ZAR".

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace endogrowth::countries {

inline constexpr std::pair<std::string_view, std::string_view> kIso3Names[] = {
    {"AFG", "Afghanistan"},
    {"AGO", "Angola"},
    {"ALB", "Albania"},
    {"ARE", "United Arab Emirates"},
    {"ARG", "Argentina"},
    {"ARM", "Armenia"},
    {"AUS", "Australia"},
    {"AUT", "Austria"},
    {"BDI", "Burundi"},
    {"BEL", "Belgium"},
    {"BEN", "Benin"},
    {"BGD", "Bangladesh"},
    {"BGR", "Bulgaria"},
    {"BHR", "Bahrain"},
    {"BLZ", "Belize"},
    {"BOL", "Bolivia"},
    {"BRA", "Brazil"},
    {"BRB", "Barbados"},
    {"BWA", "Botswana"},
    {"CAF", "Central African Republic"},
    {"CAN", "Canada"},
    {"CH2", "China 2"},
    {"CHE", "Switzerland"},
    {"CHL", "Chile"},
    {"CHN", "China"},
    {"CIV", "Cote d'Ivoire"},
    {"CMR", "Cameroon"},
    {"COD", "Democratic Republic of the Congo"},
    {"COG", "Congo"},
    {"COL", "Colombia"},
    {"CRI", "Costa Rica"},
    {"CUB", "Cuba"},
    {"CYP", "Cyprus"},
    {"CZE", "Czech Republic"},
    {"DEU", "Germany"},
    {"DNK", "Denmark"},
    {"DOM", "Dominican Republic"},
    {"DZA", "Algeria"},
    {"ECU", "Ecuador"},
    {"EGY", "Egypt"},
    {"ESP", "Spain"},
    {"EST", "Estonia"},
    {"ETH", "Ethiopia"},
    {"FIN", "Finland"},
    {"FJI", "Fiji"},
    {"FRA", "France"},
    {"GAB", "Gabon"},
    {"GBR", "United Kingdom"},
    {"GHA", "Ghana"},
    {"GMB", "Gambia"},
    {"GRC", "Greece"},
    {"GTM", "Guatemala"},
    {"GUY", "Guyana"},
    {"HKG", "Hong Kong"},
    {"HND", "Honduras"},
    {"HRV", "Croatia"},
    {"HTI", "Haiti"},
    {"HUN", "Hungary"},
    {"IDN", "Indonesia"},
    {"IND", "India"},
    {"IRL", "Ireland"},
    {"IRN", "Iran"},
    {"IRQ", "Iraq"},
    {"ISL", "Iceland"},
    {"ISR", "Israel"},
    {"ITA", "Italy"},
    {"JAM", "Jamaica"},
    {"JOR", "Jordan"},
    {"JPN", "Japan"},
    {"KAZ", "Kazakhstan"},
    {"KEN", "Kenya"},
    {"KOR", "South Korea"},
    {"KWT", "Kuwait"},
    {"LAO", "Laos"},
    {"LBR", "Liberia"},
    {"LKA", "Sri Lanka"},
    {"LSO", "Lesotho"},
    {"LTU", "Lithuania"},
    {"LUX", "Luxembourg"},
    {"LVA", "Latvia"},
    {"MAR", "Morocco"},
    {"MDA", "Moldova"},
    {"MEX", "Mexico"},
    {"MLI", "Mali"},
    {"MLT", "Malta"},
    {"MMR", "Myanmar"},
    {"MNG", "Mongolia"},
    {"MOZ", "Mozambique"},
    {"MRT", "Mauritania"},
    {"MUS", "Mauritius"},
    {"MWI", "Malawi"},
    {"MYS", "Malaysia"},
    {"NAM", "Namibia"},
    {"NER", "Niger"},
    {"NIC", "Nicaragua"},
    {"NLD", "Netherlands"},
    {"NOR", "Norway"},
    {"NPL", "Nepal"},
    {"NZL", "New Zealand"},
    {"PAK", "Pakistan"},
    {"PAN", "Panama"},
    {"PER", "Peru"},
    {"PHL", "Philippines"},
    {"PNG", "Papua New Guinea"},
    {"POL", "Poland"},
    {"PRT", "Portugal"},
    {"PRY", "Paraguay"},
    {"QAT", "Qatar"},
    {"REU", "Reunion"},
    {"ROU", "Romania"},
    {"RUS", "Russia"},
    {"RWA", "Rwanda"},
    {"SAU", "Saudi Arabia"},
    {"SDN", "Sudan"},
    {"SEN", "Senegal"},
    {"SGP", "Singapore"},
    {"SLE", "Sierra Leone"},
    {"SLV", "El Salvador"},
    {"SVK", "Slovakia"},
    {"SVN", "Slovenia"},
    {"SWE", "Sweden"},
    {"SYR", "Syria"},
    {"TGO", "Togo"},
    {"THA", "Thailand"},
    {"TUN", "Tunisia"},
    {"TUR", "Turkey"},
    {"UGA", "Uganda"},
    {"URY", "Uruguay"},
    {"USA", "United States of America"},
    {"ZAF", "South Africa"},
    {"ZAR", "Zaire"},
    {"ZMB", "Zambia"},
};

/// Name for an alpha-3 code, or nullopt when the code is not in the table.
inline std::optional<std::string> name_for_code(std::string_view code) {
  for (const auto& [c, name] : kIso3Names)
    if (c == code) return std::string(name);
  return std::nullopt;
}

/// The 60 countries that survive merge and sanitisation of the full-size
/// source snapshots, alphabetical.
inline const std::vector<std::string>& reference_roster() {
  static const std::vector<std::string> roster = {
      "Algeria",      "Argentina",   "Australia",  "Austria",     "Belgium",       "Bolivia",
      "Brazil",       "Canada",      "China",      "Colombia",    "Costa Rica",    "Cyprus",
      "Denmark",      "Ecuador",     "Egypt",      "El Salvador", "Finland",       "France",
      "Greece",       "Guatemala",   "Honduras",   "Hong Kong",   "Iceland",       "India",
      "Indonesia",    "Iran",        "Ireland",    "Israel",      "Italy",         "Japan",
      "Luxembourg",   "Malaysia",    "Mauritius",  "Mexico",      "Morocco",       "Netherlands",
      "New Zealand",  "Nicaragua",   "Norway",     "Pakistan",    "Panama",        "Paraguay",
      "Peru",         "Philippines", "Portugal",   "Romania",     "Singapore",     "South Africa",
      "South Korea",  "Spain",       "Sri Lanka",  "Sweden",      "Switzerland",   "Thailand",
      "Turkey",       "Uganda",      "United Kingdom", "United States of America", "Uruguay", "Zambia"};
  return roster;
}

}  // namespace endogrowth::countries
