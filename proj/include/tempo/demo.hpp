// Copyright 2026 The Tempo Authors
// SPDX-License-Identifier: Apache-2.0
//
// A deterministic music-player orchestration built on the engine: five
// components in a synchronous parallel under one global preemption, talking
// to in-process mock services with seeded tick latencies. No real I/O; the
// run is a pure function of (catalog, genre, seed, scripted inputs).

#ifndef TEMPO_DEMO_HPP
#define TEMPO_DEMO_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tempo/bridge.hpp"
#include "tempo/runtime.hpp"

namespace tempo::demo {

struct TrackInfo {
  std::string title;
  std::string album;
};

struct ArtistInfo {
  std::string name;
  std::optional<std::string> image;
  std::vector<TrackInfo> tracks;
};

struct MockCatalog {
  std::map<std::string, std::vector<ArtistInfo>> genres;

  const std::vector<ArtistInfo>* genre(const std::string& name) const;
  const ArtistInfo* artist(const std::string& name) const;
};

/// Parses the documented catalog schema:
/// {"genres": {"<genre>": [{"artist": ..., "image": ...,
///                          "tracks": [{"title": ..., "album": ...}]}]}}
MockCatalog parse_catalog(const Value& json);
MockCatalog load_catalog(const std::string& path);
const MockCatalog& default_catalog();

/// The player's event interface. musicstate and track are the inputs the
/// host feeds; everything else is emitted by the program.
struct DemoEvents {
  Event musicstate;  // input: "play" / "stop" / "ended"
  Event track;       // input: {"title", "album", "artist"}
  Event playlist;    // output: array of track objects
  Event artist;      // output: current artist name
  Event album;       // output: current album name
  Event bio;         // output: service payloads
  Event discog;
  Event similar;
  Event img;  // output, combiner = lexicographic min (race may tie)

  std::vector<Event> interface() const;
};

DemoEvents make_demo_events();

/// Host-side sink for the GUI-zone atoms; lines accumulate in reaction
/// order within each tick.
using GuiLog = std::shared_ptr<std::vector<std::string>>;

// Individual components, exposed for focused tests. All are built fresh
// per call; `gui` may be null to drop the zone updates.
Statement random_playlist(const std::string& genre, const DemoEvents& ev);
Statement playlist_mgr(const DemoEvents& ev, GuiLog gui);
Statement track_mgr(const DemoEvents& ev, GuiLog gui);
Statement artist_image_race(const DemoEvents& ev, GuiLog gui);
Statement artist_info(const DemoEvents& ev, GuiLog gui);
Statement gui_stub(const DemoEvents& ev, GuiLog gui);

/// The full player: every component in parallel, all of it killed when
/// musicstate carries "stop" or "ended". Throws DemoConfigError when the
/// genre is not in the catalog.
Statement build_player(const MockCatalog& catalog, const std::string& genre,
                       const DemoEvents& ev, GuiLog gui);

/// Scripted services: latencies in ticks and outcomes derived only from
/// (seed, call sequence number, service name) and the catalog.
class MockClient : public ServiceClient {
 public:
  MockClient(const MockCatalog& catalog, std::string genre,
             std::uint64_t seed);

  void issue(const ServiceCall& call, CompletionSink sink) override;
  void cancel(Token token) override;

  /// Delivers every completion due at or before `tick` through its sink.
  void advance_to(int tick);
  void set_tick(int tick) { tick_ = tick; }

  // diagnostics for the lifecycle tests
  int cancel_count(Token token) const;
  const std::vector<Value>& issued_args(Token token) const;
  std::vector<Token> issued_tokens() const;
  int delivered_count() const { return delivered_; }

 private:
  struct Pending {
    int due;
    Completion completion;
    CompletionSink sink;
  };

  std::uint64_t mix(const std::string& service) const;
  Completion answer(const ServiceCall& call);

  const MockCatalog& catalog_;
  std::string genre_;
  std::uint64_t seed_;
  std::uint64_t calls_ = 0;
  int tick_ = 0;
  int delivered_ = 0;
  std::map<Token, Pending> pending_;
  std::map<Token, int> cancels_;
  std::map<Token, std::vector<Value>> args_;
};

struct DemoConfig {
  std::string genre = "electronic";
  std::uint64_t seed = 0;
  int ticks = 50;
  int stop_at = -1;  // tick at which musicstate becomes "stop"; -1 = never
};

struct DemoResult {
  bool terminated = false;
  int final_tick = 0;
  std::vector<std::string> lines;  // full printable trace
  std::vector<Token> pending_after;
  int dropped_completions = 0;
};

/// Runs the whole demo: "play" at tick 1, track inputs simulated from the
/// playlist, optional "stop". Lines are byte-stable for a given config.
DemoResult run_demo(const DemoConfig& config);

}  // namespace tempo::demo

#endif  // TEMPO_DEMO_HPP
