package org.example.saas;

public class SaaSImpl {

    public String Index(String keyword) {
        int normalized = Integer.parseInt(keyword.trim());
        return "index:" + normalized;
    }

    public String Searching(String query) {
        if (query == null) {
            return "";
        }
        return "hits:" + query;
    }

    public String readingFile(String fileName) {
        String content = open(fileName);
        return content;
    }

    public String editFile(String fileName, int lineToEdit, String replacementText) {
        String content = open(fileName);
        return content + "@" + lineToEdit + "=" + replacementText;
    }

    private String open(String fileName) {
        return "<" + fileName + ">";
    }
}
