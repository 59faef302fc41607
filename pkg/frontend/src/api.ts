// Typed client for the inference service. Every number shown anywhere in
// the UI comes from these endpoints; nothing is computed client-side.

export interface VariableInfo {
  id: string;
  label: string;
  states: string[];
}

export interface SessionInfo {
  session: string;
  network: string;
  variables: VariableInfo[];
}

export type Marginals = Record<string, Record<string, number>>;

export interface MarginalsResponse {
  session: string;
  evidence: Record<string, string>;
  marginals: Marginals;
}

export interface LrMarker {
  marker: string;
  p_hp: number;
  p_hd: number;
  lr: number;
}

export interface LrReportResponse {
  markers: LrMarker[];
  product_rule_lr: number;
  exact_lr: number;
  mixture: Record<string, number>;
  profile: Record<string, string[]>;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
    readonly violations: string[] = []
  ) {
    super(message);
  }
}

/** The slice of the service the board components depend on (fakeable in tests). */
export interface EvidenceApi {
  createSession(network: string, config?: unknown): Promise<SessionInfo>;
  marginals(session: string, watch: string[]): Promise<MarginalsResponse>;
  setEvidence(
    session: string,
    variable: string,
    state: string,
    watch: string[]
  ): Promise<MarginalsResponse>;
  clearEvidence(
    session: string,
    variable: string,
    watch: string[]
  ): Promise<MarginalsResponse>;
  whatIf(
    session: string,
    evidence: Record<string, string>,
    watch: string[]
  ): Promise<MarginalsResponse>;
}

export class ApiClient implements EvidenceApi {
  constructor(private readonly baseUrl: string) {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown
  ): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method,
      headers: body === undefined ? {} : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json();
    if (!response.ok) {
      throw new ApiError(
        response.status,
        payload.error ?? `request failed with ${response.status}`,
        payload.violations ?? []
      );
    }
    return payload as T;
  }

  listNetworks(): Promise<{ networks: string[] }> {
    return this.request("GET", "/networks");
  }

  createSession(network: string, config?: unknown): Promise<SessionInfo> {
    const body: Record<string, unknown> = { network };
    if (config !== undefined) body.config = config;
    return this.request("POST", "/sessions", body);
  }

  uploadSession(networkFile: string): Promise<SessionInfo> {
    return this.request("POST", "/sessions", { network_file: networkFile });
  }

  marginals(session: string, watch: string[]): Promise<MarginalsResponse> {
    const query = watch.length ? `?watch=${watch.join(",")}` : "";
    return this.request("GET", `/sessions/${session}/marginals${query}`);
  }

  setEvidence(
    session: string,
    variable: string,
    state: string,
    watch: string[]
  ): Promise<MarginalsResponse> {
    return this.request("PUT", `/sessions/${session}/evidence`, {
      variable,
      state,
      watch,
    });
  }

  clearEvidence(
    session: string,
    variable: string,
    watch: string[]
  ): Promise<MarginalsResponse> {
    const query = watch.length ? `?watch=${watch.join(",")}` : "";
    return this.request(
      "DELETE",
      `/sessions/${session}/evidence/${variable}${query}`
    );
  }

  whatIf(
    session: string,
    evidence: Record<string, string>,
    watch: string[]
  ): Promise<MarginalsResponse> {
    return this.request("POST", `/sessions/${session}/what-if`, {
      evidence,
      watch,
    });
  }

  lrReport(inputs?: {
    freqs: string;
    mixture: string;
    profile: string;
  }): Promise<LrReportResponse> {
    return this.request("POST", "/lr-report", inputs ?? {});
  }
}
