from django.test import SimpleTestCase

L_TEXT = "Dx*Dy + a*Dx + b*Dy + c"


class InvariantsApiTests(SimpleTestCase):
    def post(self, payload):
        return self.client.post("/api/invariants/", payload, content_type="application/json")

    def test_invariants(self):
        response = self.post({"L": L_TEXT, "M": "m[2]*Dx^2 + m[1]*Dx", "method": "both"})
        self.assertEqual(response.status_code, 200)
        body = response.json()
        self.assertTrue(body["success"])
        self.assertEqual(body["data"]["d"], 2)
        self.assertEqual(body["data"]["R"]["1"], "m[1] - 2*m[2]*b")
        self.assertTrue(body["data"]["methods_agree"])

    def test_missing_fields(self):
        response = self.post({"L": L_TEXT})
        self.assertEqual(response.status_code, 400)
        self.assertFalse(response.json()["success"])

    def test_bad_expression(self):
        response = self.post({"L": L_TEXT, "M": "Dx*Dy"})
        self.assertEqual(response.status_code, 400)
        self.assertIn("mixed", response.json()["message"])

    def test_bad_method_and_order(self):
        self.assertEqual(self.post({"L": L_TEXT, "M": "Dx", "method": "fast"}).status_code, 400)
        self.assertEqual(self.post({"L": L_TEXT, "M": "Dx", "order": "3"}).status_code, 400)
        self.assertEqual(self.post({"L": L_TEXT, "M": "Dx^2", "order": 1}).status_code, 400)

    def test_invalid_json(self):
        response = self.client.post("/api/invariants/", "{", content_type="application/json")
        self.assertEqual(response.status_code, 400)
        self.assertEqual(response.json()["message"], "Invalid JSON data")

    def test_get_is_not_allowed(self):
        self.assertEqual(self.client.get("/api/invariants/").status_code, 405)


class VerifyDarbouxApiTests(SimpleTestCase):
    def test_factorization_instance(self):
        response = self.client.post(
            "/api/verify-darboux/",
            {
                "N": "Dy + a",
                "L": "(Dx + b)*(Dy + a)",
                "L1": "(Dy + a)*(Dx + b)",
                "M": "Dy + a",
            },
            content_type="application/json",
        )
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.json()["data"], {"residual": "0", "is_darboux": True, "order": 1})

    def test_residual(self):
        response = self.client.post(
            "/api/verify-darboux/",
            {"N": "Dy", "L": L_TEXT, "L1": L_TEXT, "M": "Dx"},
            content_type="application/json",
        )
        data = response.json()["data"]
        self.assertFalse(data["is_darboux"])
        self.assertNotEqual(data["residual"], "0")

    def test_principal_symbol_mismatch(self):
        response = self.client.post(
            "/api/verify-darboux/",
            {"N": "1", "L": "Dx^2", "L1": L_TEXT, "M": "1"},
            content_type="application/json",
        )
        self.assertEqual(response.status_code, 400)
