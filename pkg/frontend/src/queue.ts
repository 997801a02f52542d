// Review-queue controller: optimistic removal with rollback on conflict.
// DOM-free so the state machine is directly testable; the page layer
// subscribes to onChange and re-renders.

import { ApiError, type ApiClient } from "./api.js";
import type { KgStats, RecordPayload, ReviewAction } from "./types.js";

export interface QueueItem {
    record: RecordPayload;
    busy: boolean;
}

export interface QueueState {
    items: QueueItem[];
    stats: KgStats | null;
    message: string | null;
    reviewer: string;
}

type Listener = (state: QueueState) => void;

export class ReviewQueue {
    private api: Pick<ApiClient, "getPendingRecords" | "review" | "getStats">;
    private state: QueueState = { items: [], stats: null, message: null, reviewer: "" };
    private listeners: Listener[] = [];

    constructor(api: Pick<ApiClient, "getPendingRecords" | "review" | "getStats">) {
        this.api = api;
    }

    onChange(listener: Listener): void {
        this.listeners.push(listener);
    }

    getState(): QueueState {
        return this.state;
    }

    setReviewer(name: string): void {
        this.update({ reviewer: name });
    }

    private update(patch: Partial<QueueState>): void {
        this.state = { ...this.state, ...patch };
        for (const listener of this.listeners) {
            listener(this.state);
        }
    }

    async refresh(): Promise<void> {
        const [records, stats] = await Promise.all([
            this.api.getPendingRecords(),
            this.api.getStats(),
        ]);
        this.update({
            items: records.map(record => ({ record, busy: false })),
            stats,
        });
    }

    /** Apply a review action optimistically; 409 restores the item with a note. */
    async act(recordId: string, action: ReviewAction): Promise<void> {
        const reviewer = this.state.reviewer.trim();
        if (!reviewer) {
            this.update({ message: "enter a reviewer name before acting" });
            return;
        }
        const index = this.state.items.findIndex(i => i.record.record_id === recordId);
        if (index < 0) {
            return;
        }
        const removed = this.state.items[index];
        const optimistic = this.state.items.filter((_, i) => i !== index);
        this.update({ items: optimistic, message: null });
        try {
            await this.api.review(recordId, action, reviewer);
        } catch (error) {
            if (error instanceof ApiError && error.status === 409) {
                // somebody else reviewed it first; put it back with the server's answer
                const restored = [...this.state.items];
                restored.splice(Math.min(index, restored.length), 0, { ...removed, busy: false });
                this.update({
                    items: restored,
                    message: `conflict: ${error.detail}`,
                });
                await this.refreshStats();
                return;
            }
            const restored = [...this.state.items];
            restored.splice(Math.min(index, restored.length), 0, { ...removed, busy: false });
            this.update({
                items: restored,
                message: `action failed, try again: ${String(error)}`,
            });
            return;
        }
        await this.refreshStats();
    }

    private async refreshStats(): Promise<void> {
        try {
            this.update({ stats: await this.api.getStats() });
        } catch {
            // stats panel is best-effort; the queue itself is already correct
        }
    }
}
