// Copyright 2026 The Tempo Authors
// SPDX-License-Identifier: Apache-2.0

#include "tempo/demo.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>

#include "tempo/derived.hpp"
#include "tempo/errors.hpp"
#include "tempo/trace.hpp"

namespace tempo::demo {
namespace {

std::string js(const Value& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

void log(const GuiLog& gui, std::string line) {
  if (gui) gui->push_back(std::move(line));
}

// FNV-1a; std::hash is not stable across standard libraries and these bits
// feed the golden traces.
std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

SignalExpr field(const char* name, SignalExpr obj) {
  std::string key = name;
  return apply(std::string("get-") + name,
               [key](const std::vector<Value>& a) -> Value {
                 return a.at(0).at(key);
               },
               {std::move(obj)});
}

SignalExpr first(SignalExpr arr) {
  return apply("first",
               [](const std::vector<Value>& a) -> Value {
                 return a.at(0).at(0);
               },
               {std::move(arr)});
}

SignalExpr differs(SignalExpr a, SignalExpr b) {
  return apply("differs",
               [](const std::vector<Value>& a) -> Value {
                 return a.at(0) != a.at(1);
               },
               {std::move(a), std::move(b)});
}

SignalExpr nonempty(SignalExpr a) {
  return apply("nonempty",
               [](const std::vector<Value>& a) -> Value {
                 return a.at(0).is_array() && !a.at(0).empty();
               },
               {std::move(a)});
}

}  // namespace

const std::vector<ArtistInfo>* MockCatalog::genre(
    const std::string& name) const {
  auto it = genres.find(name);
  return it == genres.end() ? nullptr : &it->second;
}

const ArtistInfo* MockCatalog::artist(const std::string& name) const {
  for (const auto& [g, artists] : genres) {
    (void)g;
    for (const auto& a : artists) {
      if (a.name == name) return &a;
    }
  }
  return nullptr;
}

MockCatalog parse_catalog(const Value& json) {
  MockCatalog cat;
  if (!json.is_object() || !json.contains("genres") ||
      !json["genres"].is_object()) {
    throw DemoConfigError("catalog: expected {\"genres\": {...}}");
  }
  for (const auto& [genre, artists] : json["genres"].items()) {
    if (!artists.is_array()) {
      throw DemoConfigError("catalog: genre " + genre + " is not an array");
    }
    std::vector<ArtistInfo> list;
    try {
      for (const auto& a : artists) {
        ArtistInfo info;
        info.name = a.at("artist").get<std::string>();
        if (a.contains("image") && !a["image"].is_null()) {
          info.image = a["image"].get<std::string>();
        }
        for (const auto& t : a.value("tracks", Value::array())) {
          info.tracks.push_back({t.at("title").get<std::string>(),
                                 t.at("album").get<std::string>()});
        }
        list.push_back(std::move(info));
      }
    } catch (const nlohmann::json::exception& e) {
      throw DemoConfigError("catalog: genre " + genre + ": " + e.what());
    }
    cat.genres.emplace(genre, std::move(list));
  }
  if (cat.genres.empty()) throw DemoConfigError("catalog: no genres");
  return cat;
}

MockCatalog load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DemoConfigError("catalog: cannot open " + path);
  Value json;
  try {
    in >> json;
  } catch (const std::exception& e) {
    throw DemoConfigError(std::string("catalog: ") + e.what());
  }
  return parse_catalog(json);
}

const MockCatalog& default_catalog() {
  static const MockCatalog cat = parse_catalog(Value::parse(R"({
    "genres": {
      "electronic": [
        {"artist": "Neon Tide", "image": "mock://img/neon-tide",
         "tracks": [
           {"title": "Undertow", "album": "Saltlight"},
           {"title": "Breakwater", "album": "Saltlight"},
           {"title": "Low Orbit", "album": "Afterglow"}]},
        {"artist": "Glass Harbor", "image": "mock://img/glass-harbor",
         "tracks": [
           {"title": "Pier Nine", "album": "Soundings"},
           {"title": "Fog Signals", "album": "Soundings"}]},
        {"artist": "Vector Fields", "image": null,
         "tracks": [
           {"title": "Gradient", "album": "Divergence"},
           {"title": "Curl", "album": "Divergence"},
           {"title": "Flux", "album": "Boundary Layer"}]},
        {"artist": "Empty Signal", "image": "mock://img/empty-signal",
         "tracks": []}
      ],
      "jazz": [
        {"artist": "Marrow Quartet", "image": "mock://img/marrow",
         "tracks": [
           {"title": "Blue Ashes", "album": "Night Shift"},
           {"title": "Stairwell", "album": "Night Shift"}]},
        {"artist": "June Palmer Trio", "image": null,
         "tracks": [
           {"title": "Half Past", "album": "Meridian"}]}
      ]
    }
  })"));
  return cat;
}

std::vector<Event> DemoEvents::interface() const {
  return {musicstate, track, playlist, artist, album,
          bio,        discog, similar, img};
}

DemoEvents make_demo_events() {
  DemoEvents ev{
      make_event("musicstate", EventKind::input),
      make_event("track", EventKind::input),
      make_event("playlist", EventKind::output),
      make_event("artist", EventKind::output),
      make_event("album", EventKind::output),
      make_event("bio", EventKind::output),
      make_event("discog", EventKind::output),
      make_event("similar", EventKind::output),
      // Two image services race; on a tie the smaller URL wins.
      make_event("img", EventKind::output,
                 [](const Value& a, const Value& b) -> Value {
                   return a.dump() < b.dump() ? a : b;
                 }),
  };
  return ev;
}

Statement random_playlist(const std::string& genre, const DemoEvents& ev) {
  Event la = make_event("candidate-artist", EventKind::local);
  Event lp = make_event("candidate-tracks", EventKind::local);
  // Retry until a non-empty track list comes back. Failed lookups leave the
  // local unemitted, the guard falls through, and the loop re-enters with
  // fresh locals; each attempt costs at least one service round trip, so
  // the loop can never spin within a reaction.
  return trap(
      "found",
      loop(local(
          la,
          local(lp, request("fma.random-artist", {lit(genre)}, la),
                if_(now(la),
                    seq(request("fma.artist-tracks", {val(la)}, lp),
                        if_(now(lp),
                            if_(nonempty(val(lp)),
                                seq(emit(ev.playlist, val(lp)), exit("found")),
                                nothing()),
                            nothing())),
                    nothing())))));
}

Statement playlist_mgr(const DemoEvents& ev, GuiLog gui) {
  // Announce the playlist and seed artist/album from its first entry so the
  // info components start before any track plays.
  return every(
      now(ev.playlist),
      atom([gui, playlist = ev.playlist](const EventView& v) {
        log(gui, "playlist ready: " +
                     std::to_string(v.val(playlist).size()) + " tracks");
      }),
      if_(nonempty(val(ev.playlist)),
          seq(emit(ev.artist, field("artist", first(val(ev.playlist)))),
              emit(ev.album, field("album", first(val(ev.playlist))))),
          nothing()));
}

Statement track_mgr(const DemoEvents& ev, GuiLog gui) {
  SignalExpr cur_album = field("album", val(ev.track));
  SignalExpr cur_artist = field("artist", val(ev.track));
  // playlist_mgr gives artist/album a value before the first track input,
  // so the previous-value reads here are always defined.
  return every(
      now(ev.track),
      atom([gui, track = ev.track](const EventView& v) {
        const Value& t = v.val(track);
        log(gui, "now playing: " + js(t.at("title")) + " [" +
                     js(t.at("album")) + "]");
      }),
      if_(differs(cur_album, preval(ev.album)), emit(ev.album, cur_album),
          nothing()),
      if_(differs(cur_artist, preval(ev.artist)), emit(ev.artist, cur_artist),
          nothing()));
}

namespace {

Statement info_arm(const std::string& service, const Event& artist,
                   const Event& out, const std::string& label, GuiLog gui) {
  return seq(request(service, {val(artist)}, out),
             if_(now(out),
                 atom([gui, out, label](const EventView& v) {
                   log(gui, label + ": " + js(v.val(out)));
                 }),
                 atom([gui, label](const EventView&) {
                   log(gui, label + " unavailable");
                 })));
}

Statement image_arm(const std::string& service, const DemoEvents& ev) {
  return seq(request(service, {val(ev.artist)}, ev.img),
             if_(now(ev.img), exit("img-done"), nothing()));
}

}  // namespace

Statement artist_image_race(const DemoEvents& ev, GuiLog gui) {
  // First completion wins and cancels the slower service; if both fail the
  // event stays absent and the stub shows the placeholder.
  return seq(trap("img-done", par(image_arm("fma.artist-image", ev),
                                  image_arm("echonest.artist-image", ev))),
             if_(now(ev.img),
                 atom([gui, img = ev.img](const EventView& v) {
                   log(gui, "artist image: " + js(v.val(img)));
                 }),
                 atom([gui](const EventView&) {
                   log(gui, "artist image unavailable");
                 })));
}

Statement artist_info(const DemoEvents& ev, GuiLog gui) {
  // Restarting on every artist change kills the previous body, which
  // cancels whatever that artist still had in flight.
  return every(now(ev.artist),
               par(info_arm("mb.bio", ev.artist, ev.bio, "bio", gui),
                   info_arm("mb.discography", ev.artist, ev.discog, "albums",
                            gui),
                   info_arm("echonest.similar-artists", ev.artist, ev.similar,
                            "similar", gui),
                   artist_image_race(ev, gui)));
}

Statement gui_stub(const DemoEvents& ev, GuiLog gui) {
  // The driver feeds a state at the first tick, so the initial body run
  // always has a value to show.
  return loop_each(now(ev.musicstate),
                   atom([gui, st = ev.musicstate](const EventView& v) {
                     log(gui, "state: " + js(v.val(st)));
                   }));
}

Statement build_player(const MockCatalog& catalog, const std::string& genre,
                       const DemoEvents& ev, GuiLog gui) {
  const auto* artists = catalog.genre(genre);
  if (!artists) throw DemoConfigError("unknown genre: " + genre);
  if (artists->empty()) {
    throw DemoConfigError("genre has no artists: " + genre);
  }
  SignalExpr stopped = apply("stopped",
                             [](const std::vector<Value>& a) -> Value {
                               return a.at(0) == Value("stop") ||
                                      a.at(0) == Value("ended");
                             },
                             {val(ev.musicstate)});
  Statement announce = atom([gui, genre](const EventView&) {
    log(gui, "searching playlist: " + genre);
  });
  return until(std::move(stopped),
               par(seq(std::move(announce), random_playlist(genre, ev)),
                   playlist_mgr(ev, gui), track_mgr(ev, gui),
                   artist_info(ev, gui), gui_stub(ev, gui)));
}

MockClient::MockClient(const MockCatalog& catalog, std::string genre,
                       std::uint64_t seed)
    : catalog_(catalog), genre_(std::move(genre)), seed_(seed) {}

std::uint64_t MockClient::mix(const std::string& service) const {
  return splitmix64(seed_ ^ (calls_ * 0x9E3779B97F4A7C15ull) ^
                    fnv1a(service));
}

Completion MockClient::answer(const ServiceCall& call) {
  const std::uint64_t roll = mix(call.service);
  const Token t = call.token;
  const std::string& svc = call.service;
  auto arg0 = [&]() -> std::string {
    return call.args.empty() || !call.args[0].is_string()
               ? std::string()
               : call.args[0].get<std::string>();
  };
  if (svc == "fma.random-artist") {
    const auto* artists = catalog_.genre(arg0());
    if (!artists || artists->empty()) return fail(t, "unknown genre");
    if ((roll >> 8) % 10 == 0) return fail(t, "service busy");
    return succeed(t, (*artists)[roll % artists->size()].name);
  }
  if (svc == "fma.artist-tracks") {
    const auto* a = catalog_.artist(arg0());
    if (!a) return fail(t, "unknown artist");
    Value tracks = Value::array();
    for (const auto& tr : a->tracks) {
      tracks.push_back(
          {{"title", tr.title}, {"album", tr.album}, {"artist", a->name}});
    }
    return succeed(t, std::move(tracks));
  }
  if (svc == "mb.bio") {
    const auto* a = catalog_.artist(arg0());
    if (!a) return fail(t, "unknown artist");
    if ((roll >> 8) % 8 == 0) return fail(t, "service busy");
    return succeed(t, "About " + a->name + ": " +
                          std::to_string(a->tracks.size()) +
                          " tracks on file.");
  }
  if (svc == "mb.discography") {
    const auto* a = catalog_.artist(arg0());
    if (!a) return fail(t, "unknown artist");
    Value albums = Value::array();
    for (const auto& tr : a->tracks) {
      if (std::find(albums.begin(), albums.end(), Value(tr.album)) ==
          albums.end()) {
        albums.push_back(tr.album);
      }
    }
    return succeed(t, std::move(albums));
  }
  if (svc == "echonest.similar-artists") {
    const auto* artists = catalog_.genre(genre_);
    if (!artists) return fail(t, "unknown genre");
    Value names = Value::array();
    for (const auto& a : *artists) {
      if (a.name != arg0()) names.push_back(a.name);
    }
    if ((roll >> 8) % 8 == 0) return fail(t, "service busy");
    return succeed(t, std::move(names));
  }
  if (svc == "fma.artist-image") {
    const auto* a = catalog_.artist(arg0());
    if (!a) return fail(t, "unknown artist");
    if (!a->image) return fail(t, "no image on file");
    return succeed(t, *a->image);
  }
  if (svc == "echonest.artist-image") {
    const auto* a = catalog_.artist(arg0());
    if (!a) return fail(t, "unknown artist");
    return succeed(t, "echonest://img/" + a->name);
  }
  return fail(t, "unknown service: " + svc);
}

void MockClient::issue(const ServiceCall& call, CompletionSink sink) {
  ++calls_;
  int latency = 1 + static_cast<int>(mix(call.service + "#latency") % 3);
  if (call.service == "echonest.artist-image") ++latency;  // slower provider
  args_[call.token] = call.args;
  pending_.emplace(call.token,
                   Pending{tick_ + latency, answer(call), std::move(sink)});
}

void MockClient::cancel(Token token) {
  ++cancels_[token];
  pending_.erase(token);
}

void MockClient::advance_to(int tick) {
  std::vector<Pending> due;
  for (auto it = pending_.begin(); it != pending_.end();) {
    if (it->second.due <= tick) {
      due.push_back(std::move(it->second));
      it = pending_.erase(it);
    } else {
      ++it;
    }
  }
  for (auto& p : due) {
    ++delivered_;
    p.sink(std::move(p.completion));
  }
}

int MockClient::cancel_count(Token token) const {
  auto it = cancels_.find(token);
  return it == cancels_.end() ? 0 : it->second;
}

const std::vector<Value>& MockClient::issued_args(Token token) const {
  static const std::vector<Value> none;
  auto it = args_.find(token);
  return it == args_.end() ? none : it->second;
}

std::vector<Token> MockClient::issued_tokens() const {
  std::vector<Token> out;
  for (const auto& [t, a] : args_) {
    (void)a;
    out.push_back(t);
  }
  return out;
}

DemoResult run_demo(const DemoConfig& config) {
  const MockCatalog& catalog = default_catalog();
  DemoEvents ev = make_demo_events();
  GuiLog gui = std::make_shared<std::vector<std::string>>();
  Machine machine(build_player(catalog, config.genre, ev, gui),
                  ev.interface());
  auto client =
      std::make_shared<MockClient>(catalog, config.genre, config.seed);
  machine.set_client(client);

  std::optional<Value> playlist;
  int playlist_tick = -1;
  std::size_t next_track = 0;
  machine.add_listener(ev.playlist,
                       [&](const Event&, const std::optional<Value>& v) {
                         if (v) playlist = *v;
                       });

  DemoResult result;
  for (int tick = 1; tick <= config.ticks; ++tick) {
    client->advance_to(tick);
    client->set_tick(tick);
    if (tick == 1) machine.input(ev.musicstate, Value("play"));
    if (tick == config.stop_at) machine.input(ev.musicstate, Value("stop"));
    if (playlist && playlist_tick < 0) playlist_tick = tick;
    // A new track every third tick once the playlist has settled.
    if (playlist && tick != config.stop_at && playlist_tick >= 0 &&
        tick >= playlist_tick + 2 && (tick - playlist_tick) % 3 == 2) {
      machine.input(ev.track, (*playlist)[next_track % playlist->size()]);
      ++next_track;
    }
    ReactionReport rep = machine.react();
    result.final_tick = tick;
    result.lines.push_back(format_trace_line(make_trace_line(rep)));
    for (const auto& line : *gui) {
      result.lines.push_back("  gui | " + line);
    }
    gui->clear();
    if (rep.terminated) {
      result.terminated = true;
      break;
    }
    if (rep.error) break;
  }
  result.pending_after = machine.pending_tokens();
  result.dropped_completions = machine.dropped_completions();
  return result;
}

}  // namespace tempo::demo
