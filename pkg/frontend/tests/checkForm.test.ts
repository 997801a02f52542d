// Claim check: inline validation before any request, verdict panel rendering.

import { readFileSync } from "node:fs";
import { resolve } from "node:path";
import { describe, expect, it } from "vitest";

import { buildVerdictPanel, submitCheck, validateCheckInput } from "../src/checkForm";
import type { VerdictPayload } from "../src/types";

const supported: VerdictPayload = JSON.parse(
    readFileSync(resolve(process.cwd(), "tests/fixtures/check_supported.json"), "utf-8"),
);
const confirmed: VerdictPayload = JSON.parse(
    readFileSync(resolve(process.cwd(), "tests/fixtures/check_confirmed.json"), "utf-8"),
);

describe("validateCheckInput", () => {
    it("flags empty fields", () => {
        const errors = validateCheckInput({ subject: "  ", predicate: "causes", object: "" });
        expect(errors.subject).toBe("required");
        expect(errors.object).toBe("required");
        expect(errors.predicate).toBeUndefined();
    });

    it("accepts filled input", () => {
        expect(validateCheckInput({ subject: "a", predicate: "b", object: "c" })).toEqual({});
    });
});

describe("submitCheck", () => {
    it("does not call the API when validation fails", async () => {
        let calls = 0;
        const api = {
            check: async () => {
                calls += 1;
                return confirmed;
            },
        };
        const result = await submitCheck(api, { subject: "", predicate: "p", object: "o" });
        expect("errors" in result).toBe(true);
        expect(calls).toBe(0);
    });

    it("returns a panel for valid input", async () => {
        const api = { check: async () => supported };
        const result = await submitCheck(api, {
            subject: ":co2_concentration",
            predicate: ":causes",
            object: ":sea_level_rise",
        });
        expect("panel" in result).toBe(true);
    });
});

describe("buildVerdictPanel", () => {
    it("confirmed claims render a green panel with the matched triple", () => {
        const panel = buildVerdictPanel(confirmed);
        expect(panel.color).toBe("green");
        expect(panel.verdict).toBe("confirmed");
        expect(panel.veracity).toBe("1.0");
        expect(panel.evidenceRows[0]).toContain("co2_concentration");
    });

    it("supported claims render a yellow panel with the path and proximity", () => {
        const panel = buildVerdictPanel(supported);
        expect(panel.color).toBe("yellow");
        expect(panel.veracity).toBe("0.5906161091496412");
        expect(panel.evidenceRows.length).toBe(3); // two hops + proximity line
        expect(panel.evidenceRows[0]).toContain("global_warming");
        expect(panel.evidenceRows[2]).toBe("proximity: 0.5906161091496412");
    });

    it("verdicts without evidence say so", () => {
        const panel = buildVerdictPanel({
            verdict: "unknown",
            veracity: 0,
            threshold_used: 0.5,
            evidence: null,
        });
        expect(panel.color).toBe("gray");
        expect(panel.evidenceRows).toEqual(["no evidence"]);
    });
});
