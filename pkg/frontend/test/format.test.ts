import { describe, expect, it } from "vitest";

import { escapeHtml, fullPrecision, percent1, posteriorBar } from "../src/format.js";

describe("percent1", () => {
  it("renders one decimal place", () => {
    expect(percent1(0.553072625698324)).toBe("55.3%");
    expect(percent1(0.914458)).toBe("91.4%");
    expect(percent1(0)).toBe("0.0%");
    expect(percent1(1)).toBe("100.0%");
  });

  it("rounds rather than truncates", () => {
    expect(percent1(0.38351)).toBe("38.4%");
    expect(percent1(0.97409)).toBe("97.4%");
  });
});

describe("posteriorBar", () => {
  it("shows the rounded value and keeps full precision in the title", () => {
    const html = posteriorBar("killer", 0.553072625698324);
    expect(html).toContain(">55.3%<");
    expect(html).toContain('style="width:55.3%"');
    expect(html).toContain(`title="${fullPrecision(0.553072625698324)}"`);
  });

  it("escapes labels", () => {
    expect(posteriorBar("<b>", 0.5)).toContain("&lt;b&gt;");
  });
});

describe("escapeHtml", () => {
  it("escapes markup characters", () => {
    expect(escapeHtml('<a href="x">&</a>')).toBe(
      "&lt;a href=&quot;x&quot;&gt;&amp;&lt;/a&gt;"
    );
  });
});
