// Shared singleton tooltip, positioned near the pointer.

let tooltip: HTMLDivElement | null = null;

function ensureTooltip(): HTMLDivElement {
    if (tooltip) return tooltip;
    tooltip = document.createElement("div");
    tooltip.className = "fg-tooltip";
    tooltip.style.position = "fixed";
    tooltip.style.display = "none";
    tooltip.style.pointerEvents = "none";
    tooltip.style.zIndex = "9999";
    document.body.appendChild(tooltip);
    return tooltip;
}

export function showTooltip(event: MouseEvent, lines: string[]): void {
    const node = ensureTooltip();
    node.textContent = "";
    for (const line of lines) {
        const row = document.createElement("div");
        row.textContent = line;
        node.appendChild(row);
    }
    node.style.display = "block";
    const x = Math.min(event.clientX + 12, window.innerWidth - node.offsetWidth - 8);
    const y = Math.min(event.clientY + 12, window.innerHeight - node.offsetHeight - 8);
    node.style.left = `${Math.max(0, x)}px`;
    node.style.top = `${Math.max(0, y)}px`;
}

export function hideTooltip(): void {
    if (tooltip) {
        tooltip.style.display = "none";
    }
}

export function attachTooltip(node: HTMLElement, lines: () => string[]): void {
    node.addEventListener("mouseenter", event => showTooltip(event, lines()));
    node.addEventListener("mousemove", event => showTooltip(event, lines()));
    node.addEventListener("mouseleave", hideTooltip);
}
