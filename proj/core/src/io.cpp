#include "ncd/io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "ncd/error.hpp"

namespace ncd {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw InputError(path + ": " + what); }

const Json& field(const Json& obj, const std::string& path, const char* name) {
  auto it = obj.find(name);
  if (it == obj.end()) fail(path + "." + name, "missing field");
  return *it;
}

int to_int(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected integer");
  const auto x = v.get<std::int64_t>();
  if (x < INT32_MIN || x > INT32_MAX) fail(path, "integer out of range");
  return static_cast<int>(x);
}

int get_int(const Json& obj, const std::string& path, const char* name) {
  return to_int(field(obj, path, name), path + "." + name);
}

const Json& get_array(const Json& obj, const std::string& path, const char* name) {
  const auto& v = field(obj, path, name);
  if (!v.is_array()) fail(path + "." + name, "expected array");
  return v;
}

std::string at(const std::string& path, const char* name, std::size_t i) {
  return path + "." + name + "[" + std::to_string(i) + "]";
}

void require_object(const Json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected object");
}

Json parse(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("$: malformed JSON: ") + e.what());
  }
}

void check_header(const Json& doc, std::string_view format) {
  require_object(doc, "$");
  const auto& f = field(doc, "$", "format");
  if (!f.is_string() || f.get<std::string>() != format) fail("$.format", "expected \"" + std::string(format) + "\"");
  if (get_int(doc, "$", "version") != kFormatVersion) fail("$.version", "unsupported version");
}

Json key_json(const OccurrenceKey& k) {
  return Json{{"patient", k.patient.value}, {"packet", k.packet.value}, {"index", k.index}};
}

OccurrenceKey key_from(const Json& v, const std::string& path) {
  return {PatientId(get_int(v, path, "patient")), PacketId(get_int(v, path, "packet")), get_int(v, path, "index")};
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path.string() + ": cannot open for writing");
  out << text;
  if (!out) throw InputError(path.string() + ": write failed");
}

}  // namespace

std::string instance_to_json(const Instance& inst) {
  Json doc;
  doc["format"] = kInstanceFormat;
  doc["version"] = kFormatVersion;
  doc["horizon_days"] = inst.horizon_days;
  doc["slots_per_day"] = inst.slots_per_day;
  doc["care_units"] = Json::array();
  for (auto c : inst.care_units) doc["care_units"].push_back(c.value);
  doc["services"] = Json::array();
  for (const auto& s : inst.services) {
    doc["services"].push_back({{"id", s.id.value}, {"care_unit", s.care_unit.value}, {"duration", s.duration}});
  }
  doc["shifts"] = Json::array();
  for (const auto& s : inst.shifts) {
    doc["shifts"].push_back({{"day", s.day},
                             {"care_unit", s.care_unit.value},
                             {"operator", s.op.value},
                             {"start", s.start},
                             {"duration", s.duration}});
  }
  doc["occurrences"] = Json::array();
  for (const auto& o : inst.occurrences) {
    Json j = key_json(o.key());
    j["ideal_date"] = o.ideal_date;
    j["tolerance"] = o.tolerance;
    j["services"] = Json::array();
    for (auto s : o.services) j["services"].push_back(s.value);
    doc["occurrences"].push_back(std::move(j));
  }
  doc["interdictions"] = Json::array();
  for (const auto& r : inst.interdictions) {
    doc["interdictions"].push_back({{"trigger", r.trigger.value}, {"blocked", r.blocked.value}, {"n_days", r.n_days}});
  }
  doc["necessities"] = Json::array();
  for (const auto& r : inst.necessities) {
    doc["necessities"].push_back(
        {{"trigger", r.trigger.value}, {"required", r.required.value}, {"d_min", r.d_min}, {"d_max", r.d_max}});
  }
  return doc.dump(2) + "\n";
}

Instance instance_from_json(std::string_view text) {
  const Json doc = parse(text);
  check_header(doc, kInstanceFormat);
  const std::string root = "$";
  Instance inst;
  inst.horizon_days = get_int(doc, root, "horizon_days");
  inst.slots_per_day = get_int(doc, root, "slots_per_day");

  const auto& cus = get_array(doc, root, "care_units");
  for (std::size_t i = 0; i < cus.size(); ++i) inst.care_units.emplace_back(to_int(cus[i], at(root, "care_units", i)));

  const auto& services = get_array(doc, root, "services");
  for (std::size_t i = 0; i < services.size(); ++i) {
    const auto p = at(root, "services", i);
    require_object(services[i], p);
    inst.services.push_back({ServiceId(get_int(services[i], p, "id")), CareUnitId(get_int(services[i], p, "care_unit")),
                             get_int(services[i], p, "duration")});
  }

  const auto& shifts = get_array(doc, root, "shifts");
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    const auto p = at(root, "shifts", i);
    const auto& s = shifts[i];
    require_object(s, p);
    inst.shifts.push_back({get_int(s, p, "day"), CareUnitId(get_int(s, p, "care_unit")),
                           OperatorId(get_int(s, p, "operator")), get_int(s, p, "start"), get_int(s, p, "duration")});
  }

  const auto& occs = get_array(doc, root, "occurrences");
  for (std::size_t i = 0; i < occs.size(); ++i) {
    const auto p = at(root, "occurrences", i);
    const auto& o = occs[i];
    require_object(o, p);
    const auto key = key_from(o, p);
    PacketOccurrence occ{key.patient, key.packet, key.index, get_int(o, p, "ideal_date"), get_int(o, p, "tolerance"), {}};
    const auto& svc = get_array(o, p, "services");
    for (std::size_t j = 0; j < svc.size(); ++j) occ.services.emplace_back(to_int(svc[j], at(p, "services", j)));
    inst.occurrences.push_back(std::move(occ));
  }

  const auto& inter = get_array(doc, root, "interdictions");
  for (std::size_t i = 0; i < inter.size(); ++i) {
    const auto p = at(root, "interdictions", i);
    require_object(inter[i], p);
    inst.interdictions.push_back({ServiceId(get_int(inter[i], p, "trigger")), ServiceId(get_int(inter[i], p, "blocked")),
                                  get_int(inter[i], p, "n_days")});
  }

  const auto& nec = get_array(doc, root, "necessities");
  for (std::size_t i = 0; i < nec.size(); ++i) {
    const auto p = at(root, "necessities", i);
    require_object(nec[i], p);
    inst.necessities.push_back({ServiceId(get_int(nec[i], p, "trigger")), ServiceId(get_int(nec[i], p, "required")),
                                get_int(nec[i], p, "d_min"), get_int(nec[i], p, "d_max")});
  }

  validate(inst);
  return inst;
}

std::string solution_to_json(const SolutionRecord& rec) {
  Json doc;
  doc["format"] = kSolutionFormat;
  doc["version"] = kFormatVersion;
  doc["status"] = std::string(to_string(rec.status));
  doc["objective"] = rec.objective;
  doc["upper_bound"] = rec.upper_bound;
  doc["assignment"] = Json::array();
  for (const auto& [key, day] : rec.solution.assignment) {
    Json j = key_json(key);
    j["day"] = day ? Json(*day) : Json(nullptr);
    doc["assignment"].push_back(std::move(j));
  }
  doc["agendas"] = Json::array();
  for (const auto& agenda : rec.solution.agendas) {
    Json a{{"day", agenda.day}, {"entries", Json::array()}};
    for (const auto& [ref, entry] : agenda.entries) {
      Json e = key_json(ref.occurrence);
      e["service"] = ref.service.value;
      e["operator"] = entry.op.value;
      e["start"] = entry.start;
      a["entries"].push_back(std::move(e));
    }
    doc["agendas"].push_back(std::move(a));
  }
  return doc.dump(2) + "\n";
}

SolutionRecord solution_from_json(std::string_view text) {
  const Json doc = parse(text);
  check_header(doc, kSolutionFormat);
  const std::string root = "$";
  SolutionRecord rec;

  const auto& status = field(doc, root, "status");
  if (status == "optimal") {
    rec.status = SolveStatus::Optimal;
  } else if (status == "timelimit") {
    rec.status = SolveStatus::TimeLimit;
  } else {
    fail("$.status", "expected \"optimal\" or \"timelimit\"");
  }
  rec.objective = get_int(doc, root, "objective");
  rec.upper_bound = get_int(doc, root, "upper_bound");

  const auto& assignment = get_array(doc, root, "assignment");
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    const auto p = at(root, "assignment", i);
    require_object(assignment[i], p);
    const auto key = key_from(assignment[i], p);
    const auto& day = field(assignment[i], p, "day");
    std::optional<Day> value;
    if (!day.is_null()) value = to_int(day, p + ".day");
    if (!rec.solution.assignment.emplace(key, value).second) fail(p, "duplicate occurrence key");
  }

  const auto& agendas = get_array(doc, root, "agendas");
  for (std::size_t i = 0; i < agendas.size(); ++i) {
    const auto p = at(root, "agendas", i);
    require_object(agendas[i], p);
    DailySchedule ds;
    ds.day = get_int(agendas[i], p, "day");
    const auto& entries = get_array(agendas[i], p, "entries");
    for (std::size_t j = 0; j < entries.size(); ++j) {
      const auto q = at(p, "entries", j);
      require_object(entries[j], q);
      ServiceRef ref{key_from(entries[j], q), ServiceId(get_int(entries[j], q, "service"))};
      AgendaEntry entry{OperatorId(get_int(entries[j], q, "operator")), get_int(entries[j], q, "start")};
      if (!ds.entries.emplace(ref, entry).second) fail(q, "duplicate agenda entry");
    }
    rec.solution.agendas.push_back(std::move(ds));
  }
  return rec;
}

void write_instance(const std::filesystem::path& path, const Instance& instance) {
  spit(path, instance_to_json(instance));
}

Instance read_instance(const std::filesystem::path& path) {
  try {
    return instance_from_json(slurp(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_solution(const std::filesystem::path& path, const SolutionRecord& record) {
  spit(path, solution_to_json(record));
}

SolutionRecord read_solution(const std::filesystem::path& path) {
  try {
    return solution_from_json(slurp(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string_view to_string(Method method) { return method == Method::Mono ? "mono" : "lbbd"; }

std::string to_csv(const BenchRow& r) {
  std::ostringstream ss;
  ss << r.instance << ',' << r.patients << ',' << r.horizon << ',' << r.services << ',' << to_string(r.method) << ','
     << to_string(r.status) << ',' << r.objective << ',' << r.upper_bound << ',' << r.iterations << ',' << r.cuts << ','
     << r.master_ms << ',' << r.sp_ms << ',' << r.total_ms;
  return ss.str();
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << kBenchHeader << '\n';
  for (const auto& r : rows) out << to_csv(r) << '\n';
}

}  // namespace ncd
