import { ApiClient } from "./api.js";
import { App, AppElements } from "./app.js";

function mount(): void {
    const byId = <T extends HTMLElement>(id: string): T => {
        const element = document.getElementById(id);
        if (!element) throw new Error(`missing #${id}`);
        return element as T;
    };
    const elements: AppElements = {
        grammarInput: byId<HTMLTextAreaElement>("grammar-input"),
        loadButton: byId<HTMLButtonElement>("load-button"),
        errorBanner: byId<HTMLElement>("error-banner"),
        dmgPanel: byId<HTMLElement>("dmg-panel"),
        atadPanel: byId<HTMLElement>("atad-panel"),
        statsLine: byId<HTMLElement>("stats-line"),
    };
    new App(new ApiClient(""), elements);
}

document.addEventListener("DOMContentLoaded", mount);
