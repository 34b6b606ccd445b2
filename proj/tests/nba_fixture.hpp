#pragma once

#include <sstream>
#include <string>

#include "kregret/dataset.hpp"

namespace fixtures {

// Top eight scorers of the 2009 NBA season.
inline const char* kNbaCsv =
    "id,player,points,rebs,steals,fouls\n"
    "1,Kevin Durant,2472,623,112,171\n"
    "2,LeBron James,2258,554,125,119\n"
    "3,Dwyane Wade,2045,373,142,181\n"
    "4,Dirk Nowitzki,2027,520,70,208\n"
    "5,Kobe Bryant,1970,391,113,187\n"
    "6,Carmelo Anthony,1943,454,88,225\n"
    "7,Amare Stoudemire,1896,732,52,281\n"
    "8,Zach Randolph,1681,950,80,226\n";

inline kregret::Dataset nba(const std::vector<std::string>& cols) {
  std::istringstream in(kNbaCsv);
  kregret::CsvOptions opt;
  opt.id_column = "player";
  opt.columns = cols;
  return normalize(kregret::load_csv(in, opt));
}

/// The two-attribute slice used throughout: rebounds on the x-axis, points
/// on the y-axis, both divided by their column max.
inline kregret::Dataset nba_geom() { return nba({"rebs", "points"}); }

/// All four attributes, normalized.
inline kregret::Dataset nba_full() {
  return nba({"points", "rebs", "steals", "fouls"});
}

inline const char* kDurant = "Kevin Durant";
inline const char* kJames = "LeBron James";
inline const char* kWade = "Dwyane Wade";
inline const char* kNowitzki = "Dirk Nowitzki";
inline const char* kBryant = "Kobe Bryant";
inline const char* kAnthony = "Carmelo Anthony";
inline const char* kStoudemire = "Amare Stoudemire";
inline const char* kRandolph = "Zach Randolph";

}  // namespace fixtures
