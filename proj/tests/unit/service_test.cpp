#include <gtest/gtest.h>

#include <fstream>
#include <thread>

#include "httplib.h"
#include "ontokms/api/service.hpp"
#include "ontokms/kb/knowledge_base.hpp"
#include "temp_dir.hpp"

using namespace ontokms;
using nlohmann::json;

namespace {

class ServiceTest : public ::testing::Test {
 protected:
  ServiceTest() : kb(dir.path()), service(kb) {
    kb.seed();
    port = service.bind("127.0.0.1", 0);
    server = std::thread([this] { service.listen(); });
    service.wait_until_ready();
    client = std::make_unique<httplib::Client>("127.0.0.1", port);
  }
  ~ServiceTest() override {
    service.stop();
    server.join();
  }

  static json body(const httplib::Result& r) { return json::parse(r->body); }

  ontokms::testing::TempDir dir{"service"};
  kb::KnowledgeBase kb;
  api::Service service;
  int port = 0;
  std::thread server;
  std::unique_ptr<httplib::Client> client;
};

const std::string kNew = R"({"id":"Aura","parents":["GeneralConcept"],
  "labels":{"en":"Aura","pt":"Aura"},"comments":{"en":"Warning","pt":"Aviso"}})";

}  // namespace

TEST(EnvelopeTest, Shapes) {
  EXPECT_EQ(api::envelope({{"x", 1}}), (json{{"data", {{"x", 1}}}}));
  const auto e = api::error_envelope(ErrorCode::Cycle, "loop", {{"a", 1}});
  EXPECT_EQ(e["error"]["code"], "Cycle");
  EXPECT_EQ(e["error"]["message"], "loop");
  EXPECT_EQ(e["error"]["detail"]["a"], 1);
}

TEST_F(ServiceTest, Health) {
  const auto r = client->Get("/health");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200);
  EXPECT_EQ(body(r)["data"]["status"], "ok");
  EXPECT_EQ(body(r)["data"]["concepts"], 145);
}

TEST_F(ServiceTest, ConceptLifecycle) {
  auto r = client->Post("/concepts", kNew, "application/json");
  ASSERT_EQ(r->status, 201) << r->body;
  EXPECT_EQ(body(r)["data"]["id"], kb.resolve_id("Aura"));

  r = client->Get("/concepts/Aura");
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(body(r)["data"]["labels"]["pt"], "Aura");

  r = client->Patch("/concepts/Aura", R"({"labels":{"pt":"Aura epiléptica"}})", "application/json");
  ASSERT_EQ(r->status, 200) << r->body;
  EXPECT_EQ(body(r)["data"]["labels"]["pt"], "Aura epiléptica");

  r = client->Get("/concepts/Aura/paths");
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(body(r)["data"].size(), 1u);

  r = client->Get("/concepts/GeneralConcept/neighborhood?depth=1&lang=pt");
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(body(r)["data"]["nodes"][0]["id"], kb.resolve_id("GeneralConcept"));

  r = client->Delete("/concepts/Aura");
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(body(r)["data"]["removed"], 6);

  r = client->Get("/changes?since=0");
  const auto changes = body(r)["data"];
  ASSERT_EQ(changes.size(), 3u);
  EXPECT_EQ(changes[0]["op"], "Create");
  EXPECT_EQ(changes[1]["op"], "Annotate");
  EXPECT_EQ(changes[2]["op"], "Delete");
  EXPECT_EQ(body(client->Get("/changes?since=2"))["data"].size(), 1u);
}

TEST_F(ServiceTest, ErrorMapping) {
  auto expect = [&](const httplib::Result& r, int status, const std::string& code) {
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, status) << r->body;
    EXPECT_EQ(body(r)["error"]["code"], code) << r->body;
  };
  expect(client->Get("/concepts/Nope"), 404, "NotFound");
  expect(client->Get("/no/such/route"), 404, "NotFound");
  client->Post("/concepts", kNew, "application/json");
  expect(client->Post("/concepts", kNew, "application/json"), 409, "Conflict");
  expect(client->Patch("/concepts/GeneralConcept", R"({"parents":["Aura"]})", "application/json"), 422, "Validation");
  client->Post("/concepts",
               R"({"id":"Child","parents":["Aura"],"labels":{"en":"c","pt":"c"},"comments":{"en":"c","pt":"c"}})",
               "application/json");
  expect(client->Patch("/concepts/Aura", R"({"parents":["Child"]})", "application/json"), 409, "Cycle");
  expect(client->Delete("/concepts/Aura"), 409, "Conflict");
  expect(client->Delete("/concepts/Aura?mode=explode"), 422, "Validation");
  expect(client->Post("/concepts", "{not json", "application/json"), 422, "Parse");
  expect(client->Patch("/concepts/Aura", R"({"colour":"red"})", "application/json"), 422, "Validation");
  expect(client->Get("/search?q=aura&k=0"), 422, "Validation");
  expect(client->Get("/concepts/Aura/neighborhood?lang=fr"), 422, "Validation");
  expect(client->Post("/import?format=turtle", "<urn:a> <urn:p> .", "text/turtle"), 422, "Parse");
  expect(client->Post("/ingest", "x", "application/octet-stream"), 422, "Validation");
  expect(client->Post("/query", "SELECT ?x WHERE {", "application/sparql-query"), 422, "Parse");
}

TEST_F(ServiceTest, ParseErrorsCarryPosition) {
  const auto r = client->Post("/import?format=turtle", "<urn:a> <urn:p> <urn:b> .\n<urn:a> <urn:p> .", "text/turtle");
  ASSERT_EQ(r->status, 422);
  EXPECT_EQ(body(r)["error"]["detail"]["line"], 2);
  EXPECT_TRUE(body(r)["error"]["detail"].contains("column"));
}

TEST_F(ServiceTest, SearchQueryExportIngest) {
  auto r = client->Get("/search?q=seizure%20types&lang=en");
  ASSERT_EQ(r->status, 200);
  EXPECT_FALSE(body(r)["data"]["hits"].empty());

  r = client->Get("/search?q=siezure");
  ASSERT_EQ(r->status, 200);
  EXPECT_TRUE(body(r)["data"]["hits"].empty());
  EXPECT_FALSE(body(r)["data"]["suggestions"].empty());

  r = client->Post("/query", json{{"query", "SELECT * WHERE { }"}}.dump(), "application/json");
  ASSERT_EQ(r->status, 200) << r->body;
  EXPECT_EQ(body(r)["data"]["rows"].size(), 1u);

  r = client->Get("/export?format=ntriples");
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(r->body, kb.export_rdf(rdf::Syntax::NTriples));
  EXPECT_EQ(r->get_header_value("Content-Type").rfind("application/n-triples", 0), 0u);

  httplib::MultipartFormDataItems items = {
      {"file", "record_id,table,field,text,patient_ref\nr1,exam,notes,absence seizure,\n", "records.csv", "text/csv"}};
  r = client->Post("/ingest", items);
  ASSERT_EQ(r->status, 200) << r->body;
  EXPECT_EQ(body(r)["data"]["accepted"], 1);

  r = client->Get("/suggest?q=absence%20seizure&k=3");
  ASSERT_EQ(r->status, 200);
  EXPECT_LE(body(r)["data"]["concepts"].size(), 3u);

  r = client->Get("/validate");
  EXPECT_EQ(body(r)["data"]["violations"].size(), 0u);
}

TEST_F(ServiceTest, StorageFailureIs500) {
  std::filesystem::create_directories(dir / "store.nt.tmp");
  const auto r = client->Post("/concepts", kNew, "application/json");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 500);
  EXPECT_EQ(body(r)["error"]["code"], "Io");
}

TEST(ServiceBindTest, BusyPortIsIo) {
  kb::KnowledgeBase kb;
  api::Service first(kb);
  const int port = first.bind("127.0.0.1", 0);
  api::Service second(kb);
  try {
    second.bind("127.0.0.1", port);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
}
